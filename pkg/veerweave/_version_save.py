#!/usr/bin/env python
# This file was created automatically
longversion = '2026.10.18-20-48-35'
