from dataclasses import dataclass
from enum import Enum

from sourcelab.errors import InvalidModel, LameViolation


class ModelKind(Enum):
    POLYHARMONIC = "polyharmonic"
    ELECTROMAGNETIC = "electromagnetic"
    ELASTIC = "elastic"


@dataclass(frozen=True)
class WaveModel(object):
    """
    Which wave equation drives the far field.

    Args:
        kind (ModelKind): polyharmonic, electromagnetic or elastic
        d (int): spatial dimension
        n (Optional[int]): order of the polyharmonic operator
        lame (Optional[Tuple[float, float]]): Lame constants (lambda, mu)
    """

    kind: ModelKind
    d: int
    n: int = None
    lame: tuple = None

    def __post_init__(self):
        if not isinstance(self.kind, ModelKind):
            object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind is ModelKind.ELECTROMAGNETIC:
            if self.d != 3:
                raise InvalidModel("electromagnetic model requires d = 3")
        elif self.d not in (2, 3):
            raise InvalidModel("dimension must be 2 or 3, got {}".format(self.d))

        if self.kind is ModelKind.POLYHARMONIC:
            if self.n is None or int(self.n) != self.n or self.n < 1:
                raise InvalidModel(
                    "polyharmonic order must be an integer >= 1, got {}".format(self.n)
                )
        elif self.n is not None:
            raise InvalidModel("order n only applies to the polyharmonic model")

        if self.kind is ModelKind.ELASTIC:
            if self.lame is None or len(self.lame) != 2:
                raise LameViolation("elastic model requires Lame constants (lambda, mu)")
            lam, mu = (float(v) for v in self.lame)
            object.__setattr__(self, "lame", (lam, mu))
            if not mu > 0:
                raise LameViolation("Lame constant mu must be positive, got {}".format(mu))
            if not lam + mu > 0:
                raise LameViolation(
                    "Lame constants must satisfy lambda + mu > 0, got {}".format(lam + mu)
                )
        elif self.lame is not None:
            raise InvalidModel("Lame constants only apply to the elastic model")

    @classmethod
    def polyharmonic(cls, d, n=1):
        return cls(ModelKind.POLYHARMONIC, d, n=n)

    @classmethod
    def electromagnetic(cls):
        return cls(ModelKind.ELECTROMAGNETIC, 3)

    @classmethod
    def elastic(cls, d, lam, mu):
        return cls(ModelKind.ELASTIC, d, lame=(lam, mu))

    @property
    def is_vector(self):
        return self.kind is not ModelKind.POLYHARMONIC

    def order_interval(self):
        """
        Admissible covariance orders as an interval ``(lower, upper]``.
        """
        if self.kind is ModelKind.POLYHARMONIC:
            return (self.d + 2.0 - 4.0 * self.n, float(self.d))
        if self.kind is ModelKind.ELECTROMAGNETIC:
            return (-1.0, 3.0)
        return (self.d - 2.0, float(self.d))

    def smoothness_floor(self):
        """Stability estimates need the smoothness index strictly above this."""
        if self.kind is ModelKind.POLYHARMONIC:
            return max(self.d / 4.0 + 2.0 * self.n - 1.0, float(self.d))
        if self.kind is ModelKind.ELECTROMAGNETIC:
            return 3.0
        return float(self.d)

    def to_dict(self):
        data = {"kind": self.kind.value, "d": self.d}
        if self.n is not None:
            data["n"] = self.n
        if self.lame is not None:
            data["lame"] = list(self.lame)
        return data

    @classmethod
    def from_dict(cls, data):
        lame = data.get("lame")
        return cls(
            ModelKind(data["kind"]),
            int(data["d"]),
            n=data.get("n"),
            lame=tuple(lame) if lame is not None else None,
        )
