"""Finite dynamic-programming systems: states, actions, transition rows.

A model is explicit data: an ordered list of states, an ordered action
list per state, and for each (state, action) a sparse row of transitions
(target, probability, reward).  Rewards attach to transitions; the
expected immediate reward of an action is computed on demand.  Models are
treated as immutable after construction and all operations here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

ROW_MASS_TOL = 1e-9


class Regime(Enum):
    POSITIVE = "positive"
    SIGNED = "signed"


@dataclass(frozen=True, slots=True)
class StateId:
    index: int
    label: str

    def __repr__(self):
        return f"StateId({self.index}, {self.label!r})"


@dataclass(frozen=True, slots=True)
class ActionId:
    index: int
    label: str

    def __repr__(self):
        return f"ActionId({self.index}, {self.label!r})"


@dataclass(frozen=True, slots=True)
class Transition:
    """One sparse row entry: move to ``target`` with ``probability``, pay ``reward``."""

    target: int  # state index
    probability: float
    reward: float


@dataclass(eq=True)
class Model:
    """The four-object system: states, per-state actions, rows, sign regime.

    ``rows[s][a]`` is the transition row of action ``a`` at state ``s``,
    stored sorted by target index with no zero-probability entries.
    """

    states: tuple[StateId, ...]
    actions: tuple[tuple[ActionId, ...], ...]
    rows: tuple[tuple[tuple[Transition, ...], ...], ...]
    regime: Regime
    _cache: "CompiledModel | None" = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        # normalize row storage so structural equality matches canonical text
        rows = tuple(
            tuple(
                tuple(sorted(row, key=lambda t: t.target))
                for row in per_state
            )
            for per_state in self.rows
        )
        object.__setattr__(self, "rows", rows)

    @property
    def n_states(self) -> int:
        return len(self.states)

    def index(self, label: str) -> int:
        return self._label_map()[label]

    def state(self, label: str) -> StateId:
        return self.states[self.index(label)]

    def action(self, state: StateId | int | str, label: str) -> ActionId:
        s = state_index(self, state)
        for a in self.actions[s]:
            if a.label == label:
                return a
        raise KeyError(f"no action {label!r} at state {self.states[s].label!r}")

    def action_count(self, s: int) -> int:
        return len(self.actions[s])

    def _label_map(self) -> dict[str, int]:
        c = self.compiled()
        return c.label_to_index

    def compiled(self) -> "CompiledModel":
        if self._cache is None:
            object.__setattr__(self, "_cache", CompiledModel(self))
        return self._cache


def state_index(model: Model, s: StateId | int | str) -> int:
    if isinstance(s, StateId):
        return s.index
    if isinstance(s, str):
        return model.index(s)
    return int(s)


def build_model(
    states: Sequence[str],
    actions: Mapping[str, Sequence[tuple[str, Sequence[tuple[str, float, float]]]]],
    regime: Regime | str = Regime.POSITIVE,
) -> Model:
    """Assemble a Model from label-level data.

    ``actions[state_label]`` is an ordered list of
    ``(action_label, [(target_label, probability, reward), ...])``.
    """
    if isinstance(regime, str):
        regime = Regime(regime)
    idx = {lab: i for i, lab in enumerate(states)}
    sid = tuple(StateId(i, lab) for i, lab in enumerate(states))
    acts = []
    rows = []
    for lab in states:
        per_state_actions = []
        per_state_rows = []
        for j, (alab, row) in enumerate(actions.get(lab, ())):
            per_state_actions.append(ActionId(j, alab))
            per_state_rows.append(
                tuple(Transition(idx[t], float(p), float(r)) for t, p, r in row)
            )
        acts.append(tuple(per_state_actions))
        rows.append(tuple(per_state_rows))
    return Model(sid, tuple(acts), tuple(rows), regime)


class CompiledModel:
    """Flat numpy view of a model, built once and cached.

    Rows of all (state, action) pairs are concatenated; ``offsets[s]`` is
    the first flat pair index of state ``s`` and ``er`` holds expected
    immediate rewards per pair.  ``Q`` is the (num_pairs, n_states) sparse
    transition matrix.
    """

    def __init__(self, model: Model):
        n = model.n_states
        self.n = n
        self.label_to_index = {s.label: s.index for s in model.states}
        counts = np.array([len(a) for a in model.actions], dtype=np.int64)
        self.counts = counts
        self.offsets = np.concatenate(([0], np.cumsum(counts)[:-1])).astype(np.int64)
        num_sa = int(counts.sum())
        self.num_sa = num_sa
        self.state_of_sa = np.repeat(np.arange(n), counts)

        data, rows_ix, cols_ix = [], [], []
        er = np.zeros(num_sa)
        targets: list[np.ndarray] = []
        probs: list[np.ndarray] = []
        rewards: list[np.ndarray] = []
        k = 0
        for s in range(n):
            for row in model.rows[s]:
                t = np.array([tr.target for tr in row], dtype=np.int64)
                p = np.array([tr.probability for tr in row])
                r = np.array([tr.reward for tr in row])
                targets.append(t)
                probs.append(p)
                rewards.append(r)
                er[k] = float(p @ r)
                rows_ix.extend([k] * len(row))
                cols_ix.extend(t.tolist())
                data.extend(p.tolist())
                k += 1
        self.er = er
        self.Q = sp.csr_matrix(
            (data, (rows_ix, cols_ix)), shape=(num_sa, n)
        )
        self.targets = targets
        self.probs = probs
        self.rewards = rewards

    def sa_index(self, s: int, a: int) -> int:
        return int(self.offsets[s]) + a

    def policy_rows(self, action_of_state: np.ndarray):
        """Sparse transition matrix and expected-reward vector under a map."""
        sa = self.offsets + np.asarray(action_of_state, dtype=np.int64)
        return self.Q[sa], self.er[sa]


@dataclass(frozen=True, slots=True)
class Violation:
    location: str
    description: str
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(f"{v.description} at {v.location}" for v in self.violations)


def validate_model(model: Model) -> ValidationReport:
    """Check every model invariant; diagnostic only, never raises.

    Each violation names the offending location and the numeric defect.
    """
    out: list[Violation] = []
    n = model.n_states
    seen_labels: dict[str, int] = {}
    for s in model.states:
        if not s.label:
            out.append(Violation(f"state #{s.index}", "empty state label", 0.0))
        if s.label in seen_labels:
            out.append(
                Violation(f"state {s.label}", "duplicate state label", 0.0)
            )
        seen_labels[s.label] = s.index

    for s in range(n):
        slab = model.states[s].label
        if not model.actions[s]:
            out.append(Violation(f"({slab})", "state has no actions", 0.0))
            continue
        alabels = set()
        for a, aid in enumerate(model.actions[s]):
            loc = f"({slab}, {aid.label})"
            if aid.label in alabels:
                out.append(Violation(loc, "duplicate action label", 0.0))
            alabels.add(aid.label)
            row = model.rows[s][a]
            if not row:
                out.append(Violation(loc, "empty transition row", 0.0))
                continue
            mass = 0.0
            seen_targets = set()
            for tr in row:
                if not (0 <= tr.target < n):
                    out.append(
                        Violation(loc, f"target index {tr.target} out of range",
                                  float(tr.target))
                    )
                    continue
                if tr.target in seen_targets:
                    out.append(
                        Violation(loc,
                                  f"duplicate target {model.states[tr.target].label}",
                                  0.0)
                    )
                seen_targets.add(tr.target)
                if not (tr.probability > 0.0):
                    out.append(
                        Violation(loc, f"probability {tr.probability!r} not in (0, 1]",
                                  tr.probability)
                    )
                if tr.probability > 1.0:
                    out.append(
                        Violation(loc, f"probability {tr.probability!r} exceeds 1",
                                  tr.probability)
                    )
                if not np.isfinite(tr.reward):
                    out.append(Violation(loc, "non-finite reward", tr.reward))
                elif model.regime is Regime.POSITIVE and tr.reward < 0:
                    out.append(
                        Violation(
                            loc,
                            f"negative reward {tr.reward!r} on transition to "
                            f"{model.states[tr.target].label}",
                            tr.reward,
                        )
                    )
                mass += tr.probability
            if abs(mass - 1.0) > ROW_MASS_TOL:
                out.append(Violation(loc, f"row mass {mass!r}", mass))
    return ValidationReport(ok=not out, violations=tuple(out))


def absorbing_states(model: Model) -> set[StateId]:
    """States where every action loops back with probability 1 and reward 0."""
    out = set()
    for s in range(model.n_states):
        rows = model.rows[s]
        if rows and all(
            len(row) == 1
            and row[0].target == s
            and row[0].probability == 1.0
            and row[0].reward == 0.0
            for row in rows
        ):
            out.add(model.states[s])
    return out
