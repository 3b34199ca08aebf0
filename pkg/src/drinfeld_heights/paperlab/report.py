"""Uniform JSON-able report records for the verification checks."""
from dataclasses import dataclass, field
from fractions import Fraction


def jsonable(obj):
    """Convert exact values to strings so that reports serialize deterministically."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        return repr(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    return str(obj)


@dataclass
class Report:
    check: str
    params: dict
    passed: bool
    witnesses: object = field(default_factory=dict)
    margins: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "check": self.check,
            "params": jsonable(self.params),
            "witnesses": jsonable(self.witnesses),
            "pass": bool(self.passed),
            "margins": jsonable(self.margins),
        }
