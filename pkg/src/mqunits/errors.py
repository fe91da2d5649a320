"""Exceptions shared across the package."""


class Falsified(Exception):
    """A property the verified statements predict failed on concrete data.

    Distinct from AssertionError (internal bug) and ValueError (bad input):
    raising Falsified means the inputs were fine, the computation is trusted,
    and a claimed mathematical fact did not hold for this instance.
    """
