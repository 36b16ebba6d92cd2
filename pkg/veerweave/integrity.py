"""Validation report records

A report is a list of named checks, each of which either passed
or failed with a list of human-readable findings. The overall state
is "passed" or "failed".
"""


class Check(object):
    def __init__(self, name, passed, details=None):
        """A single validation check

        Parameters
        ----------
        name: str
            Short identifier, e.g. "angle sums"
        passed: bool
            Whether the check passed
        details: list of str
            Findings explaining a failure (may also hold notes
            for passed checks)
        """
        self.name = name
        self.passed = bool(passed)
        self.details = list(details or [])

    def __repr__(self):
        return "<Check '{}' {}>".format(self.name, self.state)

    @property
    def state(self):
        return "passed" if self.passed else "failed"

    def as_dict(self):
        return {"name": self.name,
                "state": self.state,
                "details": list(self.details),
                }


class ValidationReport(object):
    def __init__(self, checks):
        self.checks = list(checks)

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError("No check named '{}'!".format(name))

    def __iter__(self):
        return iter(self.checks)

    def __repr__(self):
        return "<ValidationReport {} ({} checks)>".format(
            self.state, len(self.checks))

    @property
    def failed(self):
        """Names of all failed checks"""
        return [ch.name for ch in self.checks if not ch.passed]

    @property
    def state(self):
        return "passed" if self.valid else "failed"

    @property
    def valid(self):
        return all(ch.passed for ch in self.checks)

    def as_dict(self):
        return {"valid": self.valid,
                "state": self.state,
                "checks": [ch.as_dict() for ch in self.checks],
                }
