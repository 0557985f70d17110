import os
from dataclasses import dataclass


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}")


def get_seed(seed=None):
    """
    Return the seed for randomized checks.

    An explicit seed wins over QTORUS_SEED.

    """
    if seed is not None:
        return seed
    return _env_int("QTORUS_SEED", 0)


def get_log_level():
    return os.environ.get("QTORUS_LOG_LEVEL", "WARNING").upper()


@dataclass(frozen=True)
class SearchBounds:
    """
    Bounds for the finite searches behind semidecisions.

    """

    degree_bound: int = 3
    coeff_bound: int = 1
    max_sublattices: int = 32
    s_max: int = 6
    window: int = 3

    def __post_init__(self):
        for name in ["degree_bound", "coeff_bound", "s_max", "window"]:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.max_sublattices < 1:
            raise ValueError("max_sublattices must be positive")

    @classmethod
    def from_env(cls, **overrides):
        """
        Return bounds read from QTORUS_* variables, then overridden.

        Overrides set to None are ignored.

        """
        values = {
            "degree_bound": _env_int("QTORUS_DEGREE_BOUND", cls.degree_bound),
            "coeff_bound": _env_int("QTORUS_COEFF_BOUND", cls.coeff_bound),
            "max_sublattices": _env_int(
                "QTORUS_MAX_SUBLATTICES", cls.max_sublattices
            ),
            "s_max": _env_int("QTORUS_S_MAX", cls.s_max),
            "window": _env_int("QTORUS_WINDOW", cls.window),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
