# src/common/laurent.py
#
# Laurent polynomials with integer coefficients, stored as {exponent: coeff}.

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple, Union

Scalar = int


@dataclass(frozen=True)
class LaurentPoly:
    terms: Tuple[Tuple[int, int], ...] = ()     # sorted (exponent, coeff), no zero coeffs

    # -------------------------
    # Constructors
    # -------------------------
    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.from_dict({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({exponent: coeff})

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "LaurentPoly":
        """Graded rank of a free module with basis in the given q-degrees."""
        out: Dict[int, int] = {}
        for d in degrees:
            out[d] = out.get(d, 0) + 1
        return cls.from_dict(out)

    # -------------------------
    # Access
    # -------------------------
    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, q: int = 1) -> Union[int, float]:
        return sum(c * q**e for e, c in self.terms)

    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def valuation(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def mirror(self) -> "LaurentPoly":
        """q -> q^-1"""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    # -------------------------
    # Arithmetic
    # -------------------------
    @staticmethod
    def _coerce(other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            # only monomials are invertible
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError(f"{self} is not invertible")
            (e, c), = self.terms
            return LaurentPoly.monomial(-e * -n, c ** (-n))
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -------------------------
    # Display
    # -------------------------
    def format(self, var: str = "q") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = f"{mag}"
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()
