"""Explicit families of SL_2 representations of the Klein, trefoil and glued groups.

Each family has at most one free parameter, which becomes the function-field
variable t in the symbolic instantiation.  Sign choices are carried by a
single ``eps`` per instance and k enters only through ``kparity``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .field_arith import (FieldDescriptor, FieldError, FqElem, fq_enumerate, fq_make,
                          fq_sqrt_minus_one, smallest_field_with_root)
from .funcfield import PoleError, RatFunc
from .groups import (GluingMatrix, Presentation, is_s2_shape,
                     is_s3_shape, is_s4_shape, is_s5_shape, presentation_of)
from .mat2 import Mat2, word_eval

KLEIN_TAGS = ("KleinIrr", "KleinRedCentral", "KleinRedChar2", "KleinRedCharNot2")
TREFOIL_TAGS = ("TrefoilIrr", "TrefoilAbParabolic", "TrefoilAbDiag", "TrefoilRedNonAb")
GLUED_TAGS = ("C_T", "C_T1", "C_T2", "C_SA", "C_SB", "C_RB", "C_uv")
TAGS = KLEIN_TAGS + TREFOIL_TAGS + GLUED_TAGS

# tags whose matrices do not depend on t
CONSTANT_TAGS = ("KleinRedCharNot2", "TrefoilAbParabolic", "TrefoilRedNonAb")

# the classical name of the parameter that t stands for
PARAMETER = {
    "KleinIrr": "y", "KleinRedCentral": "x", "KleinRedChar2": "u", "TrefoilIrr": "x",
    "TrefoilAbDiag": "x", "C_T": "f", "C_T1": "u", "C_T2": "e", "C_SA": "y",
    "C_SB": "x", "C_RB": "x", "C_uv": "t",
}

# parameter values excluded on top of those that make a denominator vanish
_EXCLUDED = {
    "KleinIrr": (0,), "KleinRedCentral": (0,), "TrefoilIrr": (0,), "TrefoilAbDiag": (0,),
    "C_T": (0,), "C_SA": (0,), "C_SB": (0, 1, -1), "C_RB": (0, 1), "C_uv": (0,),
}

CHAR2_ONLY = ("KleinRedChar2", "C_T1", "C_SA", "C_RB")
ODD_ONLY = ("KleinRedCharNot2", "C_T2")

KLEIN_COORDS = ("I_a", "I_b", "I_ab")
TREFOIL_COORDS = ("I_g", "I_h", "I_gh")
GLUED_COORDS = ("t_a", "t_b", "t_g", "t_h", "t_ab", "t_ag", "t_ah", "t_bg", "t_bh",
                "t_gh", "t_abg", "t_abh", "t_agh", "t_bgh")
# generator index tuples behind each coordinate, in order
GLUED_PRODUCTS = ((0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                  (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


class FamilyError(ValueError):
    """Invalid family parameters, e.g. a tag used in the wrong characteristic."""


class ExcludedValue(FamilyError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    p: int
    eps: int = 1
    kparity: int = 0
    s: int = 1
    u: int = 0
    v: int = 1
    y: Optional[int] = None  # code of the fixed y for C_T; None picks a default
    field_override: Optional[FieldDescriptor] = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise FamilyError(f"unknown family tag {self.tag!r}")
        if self.eps not in (1, -1):
            raise FamilyError("eps must be +1 or -1")
        if self.s not in (1, -1):
            raise FamilyError("s must be +1 or -1")
        if self.kparity not in (0, 1):
            raise FamilyError("kparity must be 0 or 1")
        if self.tag in CHAR2_ONLY and self.p != 2:
            raise FamilyError(f"{self.tag} exists only in characteristic 2")
        if self.tag in ODD_ONLY and self.p == 2:
            raise FamilyError(f"{self.tag} exists only in odd characteristic")
        if self.tag == "C_uv" and self.v == 0:
            raise FamilyError("C_uv needs v != 0")

    @property
    def group(self) -> str:
        if self.tag in KLEIN_TAGS:
            return "klein"
        if self.tag in TREFOIL_TAGS:
            return "trefoil"
        return "glued"

    @property
    def is_constant(self) -> bool:
        return self.tag in CONSTANT_TAGS

    @property
    def field(self) -> FieldDescriptor:
        if self.field_override is not None:
            return self.field_override
        return base_field(self.tag, self.p)

    def describe(self) -> dict:
        d = {"tag": self.tag, "p": self.p, "field": self.field.tag}
        if self.tag not in KLEIN_TAGS + ("TrefoilIrr", "TrefoilAbDiag", "C_T1"):
            d["eps"] = self.eps
        if self.tag in ("C_T", "C_T2", "C_uv"):
            d["kparity"] = self.kparity
        if self.tag == "C_T2":
            d["s"] = self.s
        if self.tag == "C_uv":
            d["u"], d["v"] = self.u, self.v
        if self.tag == "C_T":
            d["y"] = str(fixed_y(self))
        return d


def base_field(tag: str, p: int) -> FieldDescriptor:
    """Smallest field carrying the constants a family needs."""
    if tag in ("KleinRedCharNot2", "C_T2"):
        F, _ = smallest_field_with_root(p, (1, 0, 1))
        return F
    if tag == "TrefoilRedNonAb":
        F, _ = smallest_field_with_root(p, (1, 0, -1, 0, 1))
        return F
    if tag == "C_T" and p in (2, 3):
        # F_2 and F_3 have no y with y^2 != 1
        return fq_make(p, 2)
    return fq_make(p)


def fixed_y(spec: FamilySpec) -> FqElem:
    F = spec.field
    if spec.y is not None:
        y = F(spec.y)
        if y == 0 or y * y == 1:
            raise ExcludedValue(f"fixed y = {y} must satisfy y != 0 and y^2 != 1")
        return y
    return next(c for c in fq_enumerate(F) if c != 0 and c * c != 1)


def _sqrt_minus_one(F: FieldDescriptor) -> FqElem:
    x = fq_sqrt_minus_one(F)
    if x is None:
        raise FieldError(f"{F} has no square root of -1")
    return x


def instantiate_symbolic(spec: FamilySpec) -> tuple[Mat2, ...]:
    """The family's generator matrices over F_q(t)."""
    F = spec.field
    t = RatFunc.t(F)
    one = RatFunc.const(F, 1)
    zero = one * 0
    e, sk = spec.eps, (-1) ** spec.kparity

    def c(x):
        return RatFunc.const(F, x)

    def diag(d):
        return Mat2(d, zero, zero, 1 / d)

    tag = spec.tag
    if tag == "KleinIrr":
        return (Mat2(zero, -one, one, zero), diag(t))
    if tag == "KleinRedCentral":
        return (Mat2(t, one, zero, 1 / t), Mat2(c(e), zero, zero, c(e)))
    if tag == "KleinRedChar2":
        return (Mat2(one, t, zero, one), Mat2(one, one, zero, one))
    if tag == "KleinRedCharNot2":
        x = c(_sqrt_minus_one(F))
        return (Mat2(x, zero, zero, -x), Mat2(c(e), one, zero, c(e)))
    if tag == "TrefoilIrr":
        return (Mat2(t, one, zero, 1 / t), Mat2(1 / t, zero, -one, t))
    if tag == "TrefoilAbParabolic":
        g = Mat2(c(e), one, zero, c(e))
        return (g, g)
    if tag == "TrefoilAbDiag":
        return (diag(t), diag(t))
    if tag == "TrefoilRedNonAb":
        x = c(smallest_field_with_root(spec.p, (1, 0, -1, 0, 1))[1])
        return (diag(x), Mat2(x, one, zero, 1 / x))
    if tag in ("C_T", "C_uv"):
        if tag == "C_T":
            y, f = c(fixed_y(spec)), t
        else:
            y, f = t**spec.v, t**spec.u
        A = Mat2(zero, -one, one, zero)
        B = diag(y)
        G = diag(y**e) * sk
        w = y - 1 / y
        H = Mat2(-e * sk * y ** (-2 * e) / w, f,
                 (-(y * y) + 1 - y ** -2) / (f * w * w), e * sk * y ** (2 * e) / w)
        return (A, B, G, H)
    if tag == "C_T1":
        return (Mat2(one, t, zero, one), Mat2(one, one, zero, one),
                Mat2(one, one, zero, one), Mat2(one, zero, one, one))
    if tag == "C_T2":
        x = c(_sqrt_minus_one(F))
        s = spec.s
        H = Mat2(t, -e * sk * (-1 + 2 * s * sk * t - t * t), c(-e * sk), 2 * s * sk - t)
        # A carries a 1 above the diagonal; the diagonal A of the same display
        # gives a different character and misses the displayed tuple
        return (Mat2(x, one, zero, -x), Mat2(c(s), one, zero, c(s)),
                Mat2(c(s), c(e), zero, c(s)) * sk, H)
    if tag == "C_SA":
        g = diag(t**e)
        return (Mat2(zero, one, one, zero), diag(t), g, g)
    if tag == "C_SB":
        x = t
        g = Mat2(x ** (2 * e), e * (x + 1 / x), zero, x ** (-2 * e))
        return (Mat2(x, one, zero, 1 / x), Mat2(one, zero, zero, one), g, g)
    if tag == "C_RB":
        x = t
        xi = x + 1 / x
        return (Mat2(x, one, zero, 1 / x), Mat2(one, zero, zero, one),
                Mat2(x ** (2 * e), xi, zero, x ** (-2 * e)),
                Mat2(x ** (-2 * e), zero, 1 / xi, x ** (2 * e)))
    raise FamilyError(f"no symbolic instantiation for {tag}")  # pragma: no cover


def presentation_for(spec: FamilySpec, phi: Optional[GluingMatrix] = None) -> Presentation:
    if spec.group != "glued":
        return presentation_of(spec.group)
    return presentation_of(phi if phi is not None else representative_phi(spec))


def instantiate_numeric(spec: FamilySpec, value: "FqElem | int | None" = None) -> tuple[Mat2, ...]:
    """Numeric matrices at a parameter value (in the base field or an extension)."""
    sym = instantiate_symbolic(spec)
    F = spec.field
    if spec.is_constant:
        return tuple(M.map(lambda r: r.constant_value()) for M in sym)
    if value is None:
        raise FamilyError(f"{spec.tag} needs a value for {PARAMETER[spec.tag]}")
    if isinstance(value, int):
        value = F(value)
    for bad in _EXCLUDED.get(spec.tag, ()):
        if value == _lift_int(bad, value):
            raise ExcludedValue(f"{PARAMETER[spec.tag]} = {value} is excluded for {spec.tag}")
    try:
        return tuple(M.map(lambda r: r(value)) for M in sym)
    except PoleError as exc:
        raise ExcludedValue(f"{PARAMETER[spec.tag]} = {value} is excluded for {spec.tag}: {exc}") from exc


def _lift_int(n: int, like: FqElem) -> FqElem:
    return like.field(n % like.field.p)


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    failures: tuple[int, ...]


def verify_relations(rep: Sequence[Mat2], pres: Presentation) -> RelationReport:
    if len(rep) != pres.ngens:
        raise FamilyError(f"{len(rep)} matrices for {pres.ngens} generators")
    bad = tuple(i for i, r in enumerate(pres.relators) if not word_eval(rep, r).is_identity())
    return RelationReport(not bad, bad)


def product_trace(rep: Sequence[Mat2], idx: Sequence[int]):
    M = rep[idx[0]]
    for i in idx[1:]:
        M = M * rep[i]
    return M.trace()


def char_tuple(rep: Sequence[Mat2]) -> tuple:
    """(I_a, I_b, I_ab) for two generators, the 14 ordered products for four."""
    if len(rep) == 2:
        return (rep[0].trace(), rep[1].trace(), (rep[0] * rep[1]).trace())
    if len(rep) == 4:
        return tuple(product_trace(rep, idx) for idx in GLUED_PRODUCTS)
    raise FamilyError(f"character tuples need 2 or 4 generators, got {len(rep)}")


def component_membership(manifold: str, p: int, tup: Sequence) -> set[str]:
    """Which of the closed formulas for X_irr and X_red the 3-tuple satisfies."""
    if len(tup) != 3:
        raise FamilyError("component membership needs a 3-coordinate tuple")
    x, y, z = tup
    out = set()
    name = manifold.lower()
    if name == "klein":
        if x == 0 and z == 0:
            out.add("X_irr")
        if p == 2:
            if y == 0 and z == x:
                out.add("X_red")
        elif (y == 2 and z == x) or (y == -2 and z == -x):
            out.add("X_red")
    elif name == "trefoil":
        if x == y and z == 1:
            out.add("X_irr")
        if x == y and z == x * x - 2:
            out.add("X_red")
    else:
        raise FamilyError(f"unknown manifold {manifold!r}")
    return out


# -- gluing matrices each glued family realises -------------------------------------

def applicable(spec: FamilySpec, phi: GluingMatrix) -> bool:
    """Whether the glued family is a representation of Gamma_Phi."""
    tag = spec.tag
    if tag in ("C_T", "C_uv", "C_T2"):
        return is_s4_shape(phi) and phi.l == spec.eps and phi.k % 2 == spec.kparity
    if tag == "C_T1":
        return phi.l % 2 == 1 and phi.m % 2 == 1 and phi.n % 2 == 0
    if tag == "C_SA":
        return is_s2_shape(phi) and phi.l == spec.eps
    if tag == "C_SB":
        return is_s3_shape(phi) and phi.k == spec.eps
    if tag == "C_RB":
        return is_s5_shape(phi) and phi.k == spec.eps
    raise FamilyError(f"{tag} is not a family of the glued group")


def representative_phi(spec: FamilySpec, k: Optional[int] = None, l: int = 0) -> GluingMatrix:
    """A small gluing matrix the family applies to."""
    e = spec.eps
    tag = spec.tag
    if tag in ("C_T", "C_uv", "C_T2"):
        k = spec.kparity if k is None else k
        return GluingMatrix(k, e, -e - 6 * k, -6 * e)
    if tag == "C_T1":
        return GluingMatrix(0 if k is None else k, 1, -1, 0)
    if tag == "C_SA":
        return GluingMatrix(0 if k is None else k, e, -e, 0)
    if tag == "C_SB":
        return GluingMatrix(e, l, 0, e)
    if tag == "C_RB":
        return GluingMatrix(e, l, -6 * e, e - 6 * l)
    raise FamilyError(f"{tag} is not a family of the glued group")


def all_specs(p: int) -> list[FamilySpec]:
    """Every sign/parity combination of every family allowed in characteristic p."""
    out = []
    for tag in TAGS:
        if (tag in CHAR2_ONLY and p != 2) or (tag in ODD_ONLY and p == 2):
            continue
        eps_opts = (1, -1) if tag not in ("KleinIrr", "KleinRedChar2", "TrefoilIrr",
                                          "TrefoilAbDiag", "TrefoilRedNonAb", "C_T1") else (1,)
        kp_opts = (0, 1) if tag in ("C_T", "C_T2", "C_uv") else (0,)
        s_opts = (1, -1) if tag == "C_T2" else (1,)
        for e in eps_opts:
            for kp in kp_opts:
                for s in s_opts:
                    out.append(FamilySpec(tag, p, eps=e, kparity=kp, s=s))
    return out
