"""Rates for a three-node Gaussian relay setup.

Source S talks to destination D directly (distance d_direct) and through
a buffered relay R (legs d1 = kappa*a*d and d2 = (1-kappa)*a*d, so the
detour is a*d in total).  Two transmission strategies are compared:

* r_gc: decode-and-forward with coherent combining, maximized over the
  listening fraction t, the correlation r, and the relay power share
  beta.  This is the baseline.
* r_st / r_st_opt: the relay alternates receive and forward slots
  following a schedule codeword; the schedule itself carries weight_a
  bits per slot pair on top of the payload, and a fraction zeta of the
  source power feeds the relay path while 1 - zeta goes direct.

All capacities use log2.  r_gc is per sample; the slotted rates are in
bits/s for bandwidth b and are divided by 2b to land in the same units.

The geometry flag picks the distance of the direct path: "direct_d" uses
d itself (so received SNR over S-D is p/d**alpha), "paper_formula" uses
the detour length a*d.  The cross_term flag picks which source power
enters the coherent term: "printed" uses the full-power p_sd1,
"time_consistent" uses the beta-reduced p_sd2.
"""

import math
from dataclasses import dataclass, replace
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

__all__ = [
    "DEFAULT_WEIGHT_A",
    "GcResult",
    "InfoAmounts",
    "LinkBudget",
    "RateReport",
    "ScenarioConfig",
    "StResult",
    "TwoHopBound",
    "gauss_cap",
    "info_amounts",
    "link_budget",
    "r_gc",
    "r_st",
    "r_st_opt",
    "st_rate_from_caps",
    "sweep",
    "two_hop_bound",
]

# bits carried per receive/forward slot pair by the schedule itself;
# 2 * log2(S(150)) / 300, see ballot.rate_figures(150)
DEFAULT_WEIGHT_A = 1.9222

GEOMETRY_MODES = ("direct_d", "paper_formula")
CROSS_TERMS = ("printed", "time_consistent")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class ScenarioConfig:
    p: float  # transmit power, linear
    d: float = 10.0
    a: float = 2.0
    kappa: float = 0.35
    alpha: float = 2.0
    b: float = 1.0  # bandwidth
    ntr: int = 6  # slot-boundary overhead, delta_t = ntr / b
    weight_a: float = DEFAULT_WEIGHT_A
    geometry: str = "direct_d"
    cross_term: str = "printed"

    def __post_init__(self):
        if self.p <= 0 or self.d <= 0 or self.a <= 0 or self.b <= 0:
            raise ValueError("p, d, a and b must be positive")
        if not 0 < self.kappa < 1:
            raise ValueError("kappa must lie strictly between 0 and 1")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.ntr <= 0:
            raise ValueError("ntr must be a positive integer")
        if self.weight_a <= 0:
            raise ValueError("weight_a must be positive")
        if self.geometry not in GEOMETRY_MODES:
            raise ValueError(f"geometry must be one of {GEOMETRY_MODES}")
        if self.cross_term not in CROSS_TERMS:
            raise ValueError(f"cross_term must be one of {CROSS_TERMS}")

    @property
    def p_db(self) -> float:
        return 10.0 * math.log10(self.p)

    @property
    def delta_t(self) -> float:
        return self.ntr / self.b


@dataclass(frozen=True)
class LinkBudget:
    """Distances and full-power received SNRs for one scenario."""

    d1: float
    d2: float
    d_direct: float
    p_sr: float  # at the relay, source at full power
    p_direct: float  # at the destination over S-D, full power
    p_relay_out: float  # at the destination over R-D, full power

    def p_sd2(self, beta: float) -> float:
        return (1.0 - beta) * self.p_direct

    def p_rd(self, beta: float) -> float:
        return beta * self.p_relay_out

    def c1(self, zeta: float, b: float) -> float:
        return b * math.log2(1.0 + zeta * self.p_sr)

    def c2(self, b: float) -> float:
        return b * math.log2(1.0 + self.p_relay_out)

    def c3(self, zeta: float, b: float) -> float:
        return b * math.log2(1.0 + (1.0 - zeta) * self.p_direct)


def link_budget(cfg: ScenarioConfig) -> LinkBudget:
    detour = cfg.a * cfg.d
    d1 = cfg.kappa * detour
    d2 = (1.0 - cfg.kappa) * detour
    d_direct = cfg.d if cfg.geometry == "direct_d" else detour
    return LinkBudget(
        d1=d1,
        d2=d2,
        d_direct=d_direct,
        p_sr=cfg.p / d1**cfg.alpha,
        p_direct=cfg.p / d_direct**cfg.alpha,
        p_relay_out=cfg.p / d2**cfg.alpha,
    )


def gauss_cap(x) -> float:
    """0.5 * log2(1 + x), the Gaussian capacity per real sample."""
    if np.any(np.asarray(x) < 0):
        raise ValueError("gauss_cap requires a non-negative SNR")
    return 0.5 * np.log2(1.0 + x)


class GcResult(NamedTuple):
    rate: float
    t: float
    r: float
    beta: float


class StResult(NamedTuple):
    rate: float
    zeta: float


class TwoHopBound(NamedTuple):
    u_two: float
    u1: float
    u2: float


def _golden_max(f, lo: float, hi: float, iters: int = 80) -> Tuple[float, float]:
    # a. shrink the bracket around the max of a unimodal f
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    # b. return the better inner point
    return (c, fc) if fc >= fd else (d, fd)


def _best_t(c_sr: float, c_sd1: float, a1: float, a2: float) -> Tuple[float, float]:
    """max over t in [0,1] of min(a1 + t*(c_sr - a1), a2 + t*(c_sd1 - a2)).

    Both branches are linear in t, so the max sits at an endpoint or at
    the crossing; this removes the t dimension from the search exactly.
    """
    best_t, best_v = 0.0, min(a1, a2)
    v1 = min(c_sr, c_sd1)
    if v1 > best_v:
        best_t, best_v = 1.0, v1
    den = (c_sr - a1) - (c_sd1 - a2)
    if den != 0.0:
        tx = (a2 - a1) / den
        if 0.0 < tx < 1.0:
            vx = a1 + tx * (c_sr - a1)
            if vx > best_v:
                best_t, best_v = tx, vx
    return best_t, best_v


def _gc_objective(budget: LinkBudget, cross_printed: bool):
    c_sr = float(gauss_cap(budget.p_sr))
    c_sd1 = float(gauss_cap(budget.p_direct))

    def reduced(r: float, beta: float) -> Tuple[float, float]:
        psd2 = budget.p_sd2(beta)
        prd = budget.p_rd(beta)
        cross = budget.p_direct if cross_printed else psd2
        a1 = 0.5 * math.log2(1.0 + max(0.0, 1.0 - r * r) * psd2)
        a2 = 0.5 * math.log2(1.0 + psd2 + prd + 2.0 * r * math.sqrt(cross * prd))
        return _best_t(c_sr, c_sd1, a1, a2)

    return reduced


def r_gc(cfg: ScenarioConfig, density: int = 101) -> GcResult:
    """Decode-and-forward baseline rate, per sample.

    The listening fraction t is eliminated in closed form (the two rate
    constraints are linear in t), leaving a search over (r, beta): a
    coarse grid at the given density, then cyclic golden-section
    refinement until a full cycle improves the rate by less than 1e-10.
    """
    if density < 2:
        raise ValueError("density must be at least 2")
    budget = link_budget(cfg)
    cross_printed = cfg.cross_term == "printed"
    c_sr = float(gauss_cap(budget.p_sr))
    c_sd1 = float(gauss_cap(budget.p_direct))
    v_end = min(c_sr, c_sd1)  # t = 1 candidate, independent of (r, beta)

    rs = np.linspace(0.0, 1.0, density)
    one_minus_r2 = np.maximum(0.0, 1.0 - rs * rs)
    best = (-1.0, 0.0, 0.0)
    for beta in np.linspace(0.0, 1.0, density):
        psd2 = budget.p_sd2(float(beta))
        prd = budget.p_rd(float(beta))
        cross = budget.p_direct if cross_printed else psd2
        a1 = 0.5 * np.log2(1.0 + one_minus_r2 * psd2)
        a2 = 0.5 * np.log2(1.0 + psd2 + prd + 2.0 * rs * math.sqrt(cross * prd))
        v = np.minimum(a1, a2)  # t = 0 candidate
        den = (c_sr - a1) - (c_sd1 - a2)
        with np.errstate(divide="ignore", invalid="ignore"):
            tx = np.where(den != 0.0, (a2 - a1) / np.where(den != 0.0, den, 1.0), -1.0)
            vx = a1 + tx * (c_sr - a1)
        v = np.maximum(v, np.where((tx > 0.0) & (tx < 1.0), vx, -np.inf))
        v = np.maximum(v, v_end)
        i = int(np.argmax(v))
        if v[i] > best[0]:
            best = (float(v[i]), float(rs[i]), float(beta))

    reduced = _gc_objective(budget, cross_printed)
    rate, r, beta = best
    for _ in range(60):
        r, _ = _golden_max(lambda x: reduced(x, beta)[1], 0.0, 1.0)
        beta, new_rate = _golden_max(lambda x: reduced(r, x)[1], 0.0, 1.0)
        if new_rate - rate < 1e-10:
            rate = max(rate, new_rate)
            break
        rate = new_rate
    t, rate = reduced(r, beta)
    return GcResult(rate=rate, t=t, r=r, beta=beta)


def st_rate_from_caps(
    c1: float, c2: float, c3: float, delta_t: float, weight_a: float = DEFAULT_WEIGHT_A
) -> float:
    """Slotted-schedule rate from the three link capacities, in bits/s.

    The relay moves c1*c2/(c1+c2) payload bits/s; the schedule word adds
    weight_a bits per slot pair on top, worth a factor
    1 + weight_a / (max(c1, c2) * delta_t); the direct link runs during
    the receive slots, a c2/(c1+c2) share of the time.
    """
    if c1 < 0 or c2 < 0 or c3 < 0:
        raise ValueError("capacities must be non-negative")
    if delta_t <= 0:
        raise ValueError("delta_t must be positive")
    total = c1 + c2
    if total == 0.0 or c2 == 0.0:
        return 0.0
    through = c1 * c2 / total
    peak = max(c1, c2)
    bonus = 1.0 + weight_a / (peak * delta_t) if peak > 0 else 1.0
    return through * bonus + c2 * c3 / total


def r_st(cfg: ScenarioConfig, zeta: float) -> float:
    """Schedule-coded rate in bits/s at a fixed power split zeta."""
    if not 0.0 <= zeta <= 1.0:
        raise ValueError("zeta must lie in [0, 1]")
    budget = link_budget(cfg)
    return st_rate_from_caps(
        budget.c1(zeta, cfg.b),
        budget.c2(cfg.b),
        budget.c3(zeta, cfg.b),
        cfg.delta_t,
        cfg.weight_a,
    )


def r_st_opt(cfg: ScenarioConfig, density: int = 1001) -> StResult:
    """Best power split: coarse zeta grid plus golden refinement.

    Ties within 1e-12 prefer the boundary candidates 0 then 1, so a flat
    objective reports zeta* = 0.
    """
    if density < 2:
        raise ValueError("density must be at least 2")
    budget = link_budget(cfg)
    c2 = budget.c2(cfg.b)

    def value(z: float) -> float:
        return st_rate_from_caps(
            budget.c1(z, cfg.b), c2, budget.c3(z, cfg.b), cfg.delta_t, cfg.weight_a
        )

    zs = np.linspace(0.0, 1.0, density)
    c1s = cfg.b * np.log2(1.0 + zs * budget.p_sr)
    c3s = cfg.b * np.log2(1.0 + (1.0 - zs) * budget.p_direct)
    total = c1s + c2
    with np.errstate(divide="ignore", invalid="ignore"):
        through = np.where(total > 0, c1s * c2 / np.where(total > 0, total, 1.0), 0.0)
        peak = np.maximum(c1s, c2)
        bonus = 1.0 + cfg.weight_a / (peak * cfg.delta_t)
        rates = np.where(
            (total > 0) & (c2 > 0),
            through * bonus + c2 * c3s / np.where(total > 0, total, 1.0),
            0.0,
        )
    gi = int(np.argmax(rates))
    cell = 1.0 / (density - 1)
    lo = max(0.0, zs[gi] - cell)
    hi = min(1.0, zs[gi] + cell)
    z_ref, v_ref = _golden_max(value, lo, hi)

    candidates = [(0.0, value(0.0)), (1.0, value(1.0)),
                  (float(zs[gi]), float(rates[gi])), (z_ref, v_ref)]
    best_z, best_v = candidates[0]
    for z, v in candidates[1:]:
        if v > best_v + 1e-12:
            best_z, best_v = z, v
    return StResult(rate=best_v, zeta=best_z)


def two_hop_bound(cfg: ScenarioConfig) -> TwoHopBound:
    """Ceiling for any alternating-relay scheme, from full-power capacities."""
    budget = link_budget(cfg)
    c1 = cfg.b * math.log2(1.0 + budget.p_sr)
    c2 = budget.c2(cfg.b)
    u1 = min(c1, c2)
    u2 = 0.5 * max(c1, c2)
    return TwoHopBound(u_two=min(u1, u2), u1=u1, u2=u2)


@dataclass(frozen=True)
class InfoAmounts:
    """Bits moved in a window of length total_time at power split zeta."""

    payload_bits: float  # through the relay
    schedule_bits: float  # carried by the slot pattern itself
    direct_bits: float
    total_bits: float


def info_amounts(cfg: ScenarioConfig, zeta: float, total_time: float) -> InfoAmounts:
    if total_time <= 0:
        raise ValueError("total_time must be positive")
    budget = link_budget(cfg)
    c1 = budget.c1(zeta, cfg.b)
    c2 = budget.c2(cfg.b)
    c3 = budget.c3(zeta, cfg.b)
    total = c1 + c2
    if total == 0.0:
        return InfoAmounts(0.0, 0.0, 0.0, 0.0)
    through = c1 * c2 / total
    peak = max(c1, c2)
    schedule = through * cfg.weight_a / (peak * cfg.delta_t) if peak > 0 else 0.0
    payload = through * total_time
    schedule *= total_time
    direct = c2 * c3 / total * total_time
    return InfoAmounts(
        payload_bits=payload,
        schedule_bits=schedule,
        direct_bits=direct,
        total_bits=payload + schedule + direct,
    )


@dataclass(frozen=True)
class RateReport:
    p_db: float
    snr_direct_db: float
    kappa: float
    a: float
    ntr: int
    r_gc: float
    r_st_opt: float  # bits/s
    r_st_norm: float  # divided by 2b, same units as r_gc
    u_two_norm: float
    td_rate_norm: float  # plain two-hop share at zeta*, divided by 2b
    gamma: float
    zeta_star: float
    t_star: float
    r_star: float
    beta_star: float


def sweep(
    base: ScenarioConfig,
    p_dbs: Sequence[float],
    kappas: Sequence[float],
    a_values: Sequence[float],
    ntrs: Sequence[int],
    gc_density: int = 101,
    st_density: int = 1001,
) -> List[RateReport]:
    """Rate reports over the cartesian grid, rows in deterministic order
    (kappa, then a, then ntr, then ascending p).  r_gc does not depend on
    ntr and is shared across those rows.
    """
    reports = []
    for kappa in kappas:
        for a in a_values:
            gc_cache = {}
            for ntr in ntrs:
                for p_db in p_dbs:
                    cfg = replace(
                        base, p=10.0 ** (p_db / 10.0), kappa=kappa, a=a, ntr=ntr
                    )
                    if p_db not in gc_cache:
                        gc_cache[p_db] = r_gc(cfg, density=gc_density)
                    gc = gc_cache[p_db]
                    st = r_st_opt(cfg, density=st_density)
                    bound = two_hop_bound(cfg)
                    budget = link_budget(cfg)
                    c1 = budget.c1(st.zeta, cfg.b)
                    c2 = budget.c2(cfg.b)
                    td = c1 * c2 / (c1 + c2) if c1 + c2 > 0 else 0.0
                    norm = 2.0 * cfg.b
                    st_norm = st.rate / norm
                    snr_db = p_db - 10.0 * cfg.alpha * math.log10(budget.d_direct)
                    reports.append(
                        RateReport(
                            p_db=p_db,
                            snr_direct_db=snr_db,
                            kappa=kappa,
                            a=a,
                            ntr=ntr,
                            r_gc=gc.rate,
                            r_st_opt=st.rate,
                            r_st_norm=st_norm,
                            u_two_norm=bound.u_two / norm,
                            td_rate_norm=td / norm,
                            gamma=st_norm / gc.rate if gc.rate > 0 else math.inf,
                            zeta_star=st.zeta,
                            t_star=gc.t,
                            r_star=gc.r,
                            beta_star=gc.beta,
                        )
                    )
    return reports
