"""JSON surfaces: portraits, enumeration constraints, permutation triples, reports."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pullback.monodromy import Permutation, PermutationTriple
from pullback.portrait import FiberSlot, Portrait


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# Portraits
# ---------------------------------------------------------------------------

class FiberSlotModel(_Strict):
    mult: int = Field(ge=1)
    label: str | None = None


class PortraitModel(_Strict):
    degree: int = Field(ge=1)
    A: list[str]
    B: list[str]
    dynamical: bool = False
    fibers: dict[str, list[FiberSlotModel]]

    def to_portrait(self, name: str | None = None) -> Portrait:
        return Portrait(
            degree=self.degree,
            A=tuple(self.A),
            B=tuple(self.B),
            fibers={
                b: tuple(FiberSlot(s.mult, s.label) for s in slots)
                for b, slots in self.fibers.items()
            },
            dynamical=self.dynamical,
            name=name,
        )

    @classmethod
    def from_portrait(cls, p: Portrait) -> PortraitModel:
        return cls(
            degree=p.degree,
            A=list(p.A),
            B=list(p.B),
            dynamical=p.dynamical,
            fibers={
                b: [FiberSlotModel(mult=s.mult, label=s.label) for s in p.fiber(b)]
                for b in p.B
            },
        )


def portrait_to_dict(p: Portrait) -> dict[str, Any]:
    return PortraitModel.from_portrait(p).model_dump()


# ---------------------------------------------------------------------------
# Enumeration constraints
# ---------------------------------------------------------------------------

class EnumSpec(_Strict):
    """Constraints for :func:`pullback.dynamics.enumerate_portraits`.

    ``critical_profile`` lists, per critical value, the multiplicities of
    the critical points above it. Critical values are named ``v1..vk`` in
    this order; the other postcritical points are ``t`` (or ``t1, t2, ...``).
    """

    degree: int = Field(ge=2, le=6)
    critical_profile: list[list[int]]
    num_postcritical: int = Field(ge=1, le=6)
    swap_classes: list[list[str]] = Field(default_factory=list)
    apply_filters: bool = False
    group_by: Literal["graph", "portrait"] = "graph"
    max_preperiod: int | None = Field(default=None, ge=0)

    @field_validator("critical_profile")
    @classmethod
    def _profile_entries(cls, v: list[list[int]]) -> list[list[int]]:
        if not v:
            raise ValueError("at least one critical value is required")
        for entry in v:
            if not entry or any(m < 2 for m in entry):
                raise ValueError(f"profile entry {entry} needs multiplicities >= 2")
        return [sorted(entry, reverse=True) for entry in v]

    @model_validator(mode="after")
    def _swap_classes_share_profile(self) -> EnumSpec:
        names = self.value_names()
        seen: set[str] = set()
        for cls_ in self.swap_classes:
            for s in cls_:
                if s not in names:
                    raise ValueError(f"swap class member {s!r} is not a critical value name")
                if s in seen:
                    raise ValueError(f"{s!r} appears in two swap classes")
                seen.add(s)
            profiles = {tuple(self.critical_profile[names.index(s)]) for s in cls_}
            if len(profiles) > 1:
                raise ValueError(f"swap class {cls_} mixes critical profiles {sorted(profiles)}")
        return self

    def value_names(self) -> list[str]:
        return [f"v{i + 1}" for i in range(len(self.critical_profile))]

    def extra_names(self) -> list[str]:
        extra = self.num_postcritical - len(self.critical_profile)
        if extra <= 0:
            return []
        if extra == 1:
            return ["t"]
        return [f"t{i + 1}" for i in range(extra)]


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

class TripleModel(_Strict):
    """Cycles are 1-based; fixed points may be omitted."""

    degree: int = Field(ge=1)
    sigma0: list[list[int]]
    sigma1: list[list[int]]
    sigma_inf: list[list[int]]

    def to_triple(self) -> PermutationTriple:
        return PermutationTriple(
            self.degree,
            Permutation.from_cycles(self.degree, self.sigma0),
            Permutation.from_cycles(self.degree, self.sigma1),
            Permutation.from_cycles(self.degree, self.sigma_inf),
        )

    @classmethod
    def from_triple(cls, t: PermutationTriple) -> TripleModel:
        return cls(
            degree=t.degree,
            sigma0=t.sigma0.cycles(),
            sigma1=t.sigma1.cycles(),
            sigma_inf=t.sigma_inf.cycles(),
        )


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class FilterResultModel(_Strict):
    filter: str
    citation: str
    verdict: Literal["pass", "fail", "skip", "error"]
    detail: str
    proved: bool = True


class ReportModel(_Strict):
    """What every CLI command prints, as JSON or as YAML text."""

    command: str
    results: dict[str, Any]
    citations: list[str] = Field(default_factory=list)
    exit_status: int = 0
