TRUE = ("1", "true", "True", "TRUE", "on", "yes")


def is_true(val: str | None) -> bool:
    return val in TRUE


def as_float(val: str | None, default: float) -> float:
    return float(val) if val not in (None, "") else default


def as_int(val: str | None, default: int) -> int:
    return int(val) if val not in (None, "") else default
