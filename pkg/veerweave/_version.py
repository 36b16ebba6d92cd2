"""Package version from the git tag

The version is taken from `git describe --tags` when this file lives
one level below a git checkout. Otherwise it is read from the
non-versioned `_version_save.py` shipped with source distributions.
The creation date of this file is the last resort.
"""
import os
from os.path import abspath, dirname, join, split
import subprocess
import sys
import time
import warnings


def git_describe():
    """`git describe --tags HEAD` of the repository holding this file

    Returns an empty string if this file is not under version control
    or git is not available.
    """
    here = dirname(abspath(__file__))
    env = {k: os.environ[k] for k in ["SYSTEMROOT", "PATH"]
           if k in os.environ}
    env.update(LANGUAGE="C", LANG="C", LC_ALL="C")

    def run(cmd):
        pop = subprocess.Popen(cmd, cwd=here, env=env,
                               stdout=subprocess.PIPE,
                               stderr=subprocess.PIPE)
        return pop.communicate()[0].strip().decode("ascii", errors="ignore")

    try:
        loc = run(["git", "ls-files", "--full-name", __file__])
    except OSError:
        return ""
    # "veerweave/_version.py" in our own repository
    if loc and len(split(loc)) == 2:
        try:
            return run(["git", "describe", "--tags", "HEAD"])
        except OSError:
            pass
    return ""


def load_version(versionfile):
    longversion = ""
    try:
        with open(versionfile, "r") as fd:
            for line in fd:
                if line.startswith("longversion"):
                    longversion = line.split("=")[1].strip().strip("'")
    except OSError:
        pass
    return longversion


def write_version(longversion, versionfile):
    data = ("#!/usr/bin/env python\n"
            "# This file was created automatically\n"
            "longversion = '{}'\n").format(longversion)
    try:
        with open(versionfile, "w") as fd:
            fd.write(data)
    except OSError:
        if not os.path.exists(versionfile):
            warnings.warn("Could not write package version to {}.".format(
                versionfile))


versionfile = join(dirname(abspath(__file__)), "_version_save.py")

longversion = git_describe() or load_version(versionfile)

if not longversion:
    ctime = os.stat(__file__)[8]
    longversion = time.strftime("%Y.%m.%d-%H-%M-%S", time.gmtime(ctime))

if not hasattr(sys, "frozen") and longversion != load_version(versionfile):
    write_version(longversion, versionfile)

# PEP 440-conform development version
version = ".post".join(longversion.split("-")[:2])
