"""Generalized Lakshmibai-Seshadri paths and their crystal.

A GLS path of shape lambda is a strictly decreasing sequence of T-orbit
weights with rational break points; admissibility of consecutive weights
is certified by a-chains.  The root operators act by a closed-form
surgery on the weight sequence, which the generic path operators must
reproduce on rendered paths (the oracle-equivalence property).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .paths import PiecewisePath, apply_e, first_time_at, last_time_at
from .rootdata import (Weight, WeightContext, format_weight, offset_vector,
                       weight)
from .torbit import AChain, find_a_chain


@dataclass(frozen=True)
class GLSPath:
    """Orbit-weight sequence with break points; shape is the orbit anchor."""

    shape: Weight
    weights: Tuple[Weight, ...]
    breaks: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("a GLS path needs at least one weight")
        if len(self.breaks) != len(self.weights) + 1:
            raise ValueError("break count must exceed weight count by one")
        if self.breaks[0] != 0 or self.breaks[-1] != 1:
            raise ValueError("breaks must run from 0 to 1")
        if any(self.breaks[k] >= self.breaks[k + 1] for k in range(len(self.breaks) - 1)):
            raise ValueError("breaks must increase strictly")
        if any(self.weights[k] == self.weights[k + 1] for k in range(len(self.weights) - 1)):
            raise ValueError("adjacent weights must differ")

    @staticmethod
    def linear(lam: Weight) -> "GLSPath":
        return GLSPath(lam, (lam,), (Fraction(0), Fraction(1)))

    def weight(self) -> Weight:
        total = weight()
        for k, w in enumerate(self.weights):
            total = total + (self.breaks[k + 1] - self.breaks[k]) * w
        return total

    def render(self) -> PiecewisePath:
        pts = [(Fraction(0), weight())]
        for k, w in enumerate(self.weights):
            t0, t1 = self.breaks[k], self.breaks[k + 1]
            pts.append((t1, pts[-1][1] + (t1 - t0) * w))
        return PiecewisePath.from_points(pts)

    @staticmethod
    def from_piecewise(shape: Weight, pi: PiecewisePath) -> "GLSPath":
        ws, bs = [], [pi.points[0][0]]
        for k in range(1, len(pi.points)):
            t0, v0 = pi.points[k - 1]
            t1, v1 = pi.points[k]
            ws.append((v1 - v0) * (Fraction(1) / (t1 - t0)))
            bs.append(t1)
        return GLSPath(shape, tuple(ws), tuple(bs))

    def sort_key(self):
        return (tuple(w.sort_key() for w in self.weights), self.breaks)

    def __repr__(self):
        ws = ", ".join(format_weight(w) for w in self.weights)
        bs = ", ".join(str(b) for b in self.breaks)
        return f"GLSPath(({ws}; {bs}))"


def _normalize_weak(shape: Weight, ws: Sequence[Weight],
                    bs: Sequence[Fraction]) -> GLSPath:
    """Drop zero-length segments, merge equal neighbours; recovers strictness."""
    out_w: List[Weight] = []
    out_b: List[Fraction] = [bs[0]]
    for k, w in enumerate(ws):
        if bs[k] == bs[k + 1]:
            continue
        if out_w and out_w[-1] == w:
            out_b[-1] = bs[k + 1]
        else:
            out_w.append(w)
            out_b.append(bs[k + 1])
    return GLSPath(shape, tuple(out_w), tuple(out_b))


def _h_data(ctx: WeightContext, i: int, pi: GLSPath):
    """Times and h_i values at the break points of the rendered path."""
    ts = list(pi.breaks)
    hs = [Fraction(0)]
    for k, w in enumerate(pi.weights):
        hs.append(hs[-1] + (ts[k + 1] - ts[k]) * ctx.pairing(i, w))
    return ts, hs


def _min_level(hs: Sequence[Fraction]) -> int:
    m = min(hs)
    if m.denominator != 1:
        raise ValueError("path is not integral; not a GLS path")
    return int(m)


def gls_f(ctx: WeightContext, i: int, pi: GLSPath) -> Optional[GLSPath]:
    """Closed-form lowering operator on GLS data.

    With f_plus = a_t and a_{p-1} < f_minus <= a_p, the weights with
    indices t+1..p are reflected by r_i and the break f_minus is inserted;
    the imaginary case is the special case t = 0.
    """
    ts, hs = _h_data(ctx, i, pi)
    m = _min_level(hs)
    f_plus = last_time_at(ts, hs, Fraction(m))
    if f_plus == 1:
        return None
    if f_plus not in ts:
        raise ValueError("f_plus is not a break point; not a GLS path")
    t_idx = ts.index(f_plus)
    f_minus = first_time_at(ts, hs, Fraction(m + 1), f_plus)
    assert f_minus is not None
    p = next(k for k in range(t_idx + 1, len(ts)) if f_minus <= ts[k])
    new_w = (list(pi.weights[:t_idx])
             + [ctx.reflect(i, w) for w in pi.weights[t_idx:p]]
             + list(pi.weights[p - 1:]))
    new_b = list(ts[:p]) + [f_minus] + list(ts[p:])
    return _normalize_weak(pi.shape, new_w, new_b)


def gls_e(ctx: WeightContext, i: int, pi: GLSPath,
          height_bound: Optional[int] = None) -> Optional[GLSPath]:
    """Raising operator inside the GLS crystal.

    Real indices have a closed form mirroring gls_f.  For an imaginary
    index the crystal raising is defined by membership: the generic
    operator is applied to the rendered path and the result is kept only
    if it verifies as a GLS path of the same shape (equivalently, iff it
    is the f_i-preimage inside the crystal).
    """
    if ctx.matrix.is_real(i):
        ts, hs = _h_data(ctx, i, pi)
        m = _min_level(hs)
        e_plus = first_time_at(ts, hs, Fraction(m), Fraction(0))
        if e_plus == 0:
            return None
        if e_plus not in ts:
            raise ValueError("e_plus is not a break point; not a GLS path")
        k_idx = ts.index(e_plus)
        e_minus = last_time_at(ts, hs, Fraction(m + 1), e_plus)
        assert e_minus is not None
        q = next(k for k in range(1, k_idx + 1) if e_minus < ts[k])
        new_w = (list(pi.weights[:q])
                 + [ctx.reflect(i, w) for w in pi.weights[q - 1:k_idx]]
                 + list(pi.weights[k_idx:]))
        new_b = list(ts[:q]) + [e_minus] + list(ts[q:])
        return _normalize_weak(pi.shape, new_w, new_b)
    raised = apply_e(ctx, i, pi.render())
    if raised is None:
        return None
    try:
        candidate = GLSPath.from_piecewise(pi.shape, raised)
    except ValueError:
        return None
    if not verify_gls(ctx, candidate, height_bound):
        return None
    return candidate


def gls_epsilon(ctx: WeightContext, i: int, pi: GLSPath):
    """-m_i for a real index, 0 for an imaginary one."""
    if ctx.matrix.is_real(i):
        _, hs = _h_data(ctx, i, pi)
        return -_min_level(hs)
    return 0


@dataclass(frozen=True)
class GLSVerification:
    """Outcome of the membership test, with chain witnesses on success."""

    ok: bool
    chains: Tuple[AChain, ...]
    failing_pair: Optional[Tuple[Weight, Weight, Fraction]] = None

    def __bool__(self):
        return self.ok


def verify_gls(ctx: WeightContext, pi: GLSPath,
               height_bound: Optional[int] = None) -> GLSVerification:
    """Check the chain conditions: an a_k-chain for each consecutive pair of
    weights and, when the last weight differs from the shape, a 1-chain
    down to it."""
    chains: List[AChain] = []
    pairs = [(pi.weights[k], pi.weights[k + 1], pi.breaks[k + 1])
             for k in range(len(pi.weights) - 1)]
    if pi.weights[-1] != pi.shape:
        pairs.append((pi.weights[-1], pi.shape, Fraction(1)))
    for mu, nu, level in pairs:
        chain = find_a_chain(ctx, level, mu, nu, height_bound)
        if chain is None:
            return GLSVerification(False, tuple(chains), (mu, nu, level))
        chains.append(chain)
    return GLSVerification(True, tuple(chains))


# -- crystal graphs ------------------------------------------------------


@dataclass
class CrystalNode:
    element: object
    key: object
    wt: Weight
    depth: int
    frontier: bool
    eps: Tuple
    phi: Tuple


class CrystalGraph:
    """Edge-labeled f-closure of a single element, truncated by weight depth.

    Nodes are ordered by (depth, canonical key); e-edges are the reverses
    of f-edges.  ``frontier`` marks nodes whose children were cut by the
    truncation, so that a missing edge there is never read as f = 0.
    """

    def __init__(self, ctx: WeightContext, depth: int, nodes: List[CrystalNode],
                 f_edges: Dict[Tuple[int, int], int]):
        self.ctx = ctx
        self.depth = depth
        self.nodes = nodes
        self.index = {node.key: k for k, node in enumerate(nodes)}
        self.f_edges = f_edges
        self.e_edges = {(dst, i): src for (src, i), dst in f_edges.items()}

    def __len__(self):
        return len(self.nodes)

    @property
    def root(self) -> CrystalNode:
        return self.nodes[0]

    def f_image(self, idx: int, i: int) -> Optional[int]:
        return self.f_edges.get((idx, i))

    def e_image(self, idx: int, i: int) -> Optional[int]:
        return self.e_edges.get((idx, i))

    def offset_of(self, idx: int) -> Tuple[Fraction, ...]:
        return offset_vector(self.root.wt, self.nodes[idx].wt, self.ctx.matrix.n)


def build_crystal_graph(ctx: WeightContext, root_element, depth: int,
                        f_func: Callable, wt_func: Callable,
                        eps_func: Callable, key_func: Callable,
                        parallel: bool = False) -> CrystalGraph:
    """Breadth-first f-closure; each f-step raises the weight depth by one,
    so BFS layers coincide with depth layers.  Parallel expansion of a
    layer must not change the result: children are merged in (parent, i)
    order regardless of completion order."""
    n = ctx.matrix.n
    found: Dict[object, Tuple[object, int]] = {key_func(root_element): (root_element, 0)}
    edges: Dict[Tuple[object, int], object] = {}
    layer = [(key_func(root_element), root_element)]
    level = 0
    while layer and level < depth:
        layer.sort(key=lambda kv: kv[0])

        def expand(el):
            return [(i, f_func(ctx, i, el)) for i in range(1, n + 1)]

        if parallel and len(layer) > 1:
            with ThreadPoolExecutor() as pool:
                results = list(pool.map(expand, [el for _, el in layer]))
        else:
            results = [expand(el) for _, el in layer]
        nxt = []
        for (key, _), children in zip(layer, results):
            for i, child in children:
                if child is None:
                    continue
                ckey = key_func(child)
                edges[(key, i)] = ckey
                if ckey not in found:
                    found[ckey] = (child, level + 1)
                    nxt.append((ckey, child))
        layer = nxt
        level += 1
    order = sorted(found, key=lambda k: (found[k][1], k))
    position = {k: idx for idx, k in enumerate(order)}
    nodes = []
    for k in order:
        el, d = found[k]
        wt = wt_func(ctx, el)
        eps = tuple(eps_func(ctx, i, el) for i in range(1, n + 1))
        phi = tuple(e + ctx.pairing(i, wt) for i, e in enumerate(eps, start=1))
        nodes.append(CrystalNode(el, k, wt, d, d == depth, eps, phi))
    f_edges = {(position[src], i): position[dst] for (src, i), dst in edges.items()}
    return CrystalGraph(ctx, depth, nodes, f_edges)


def enumerate_crystal(ctx: WeightContext, lam: Weight, depth: int,
                      parallel: bool = False) -> CrystalGraph:
    """The crystal of GLS paths of shape lambda: the f-closure of the
    straight path, cut at the given weight depth."""
    if not ctx.is_P_plus(lam):
        raise ValueError(f"shape {format_weight(lam)} is not in P+")
    return build_crystal_graph(
        ctx, GLSPath.linear(lam), depth,
        f_func=gls_f,
        wt_func=lambda c, el: el.weight(),
        eps_func=gls_epsilon,
        key_func=lambda el: el.sort_key(),
        parallel=parallel,
    )


def export_dot(graph: CrystalGraph) -> str:
    """Deterministic DOT rendering; nodes carry weights and GLS break points."""
    lines = ["digraph crystal {", "  rankdir=TB;"]
    for idx, node in enumerate(graph.nodes):
        label = f"wt={format_weight(node.wt)}"
        if isinstance(node.element, GLSPath):
            label += "\\nbreaks=" + ",".join(str(b) for b in node.element.breaks)
        if node.frontier:
            label += "\\n(frontier)"
        lines.append(f'  n{idx} [label="{label}"];')
    for (src, i), dst in sorted(graph.f_edges.items()):
        lines.append(f'  n{src} -> n{dst} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- joining ---------------------------------------------------------------


class JoinRejected(ValueError):
    """A joining condition failed; carries which one and a witness."""

    def __init__(self, condition: int, witness):
        self.condition = condition
        self.witness = witness
        super().__init__(f"JoinRejected(condition {condition}): {witness}")


@dataclass(frozen=True)
class JoinResult:
    path: PiecewisePath
    tau_roots: tuple
    tau_bar_kept: Tuple[bool, ...]
    condition2_restricted_ok: bool
    condition2_full_ok: bool
    shape_chain: Optional[AChain]


def properly_join(ctx: WeightContext, pi: GLSPath, pi_prime: GLSPath,
                  s: Fraction, s_prime: Fraction,
                  height_bound: Optional[int] = None,
                  witnesses: Optional[GLSVerification] = None) -> JoinResult:
    """Join pi (shape lambda) to pi_prime (shape mu) across [s, s'].

    Writing mu_1 = tau.mu through the covering chains of pi_prime, the
    shadow tau-bar on lambda omits reflections that fix their argument.
    Condition 1 asks for an s-chain from the last weight of pi down to
    tau-bar.lambda; condition 2 bounds s * beta^vee at every imaginary
    chain root (checked on the roots kept in tau-bar; the unrestricted
    variant is recorded alongside).  The joined path stalls on [s, s'].
    """
    s, s_prime = Fraction(s), Fraction(s_prime)
    if not pi.breaks[-2] < s <= s_prime < pi_prime.breaks[1]:
        raise ValueError("need a_{k-1} < s <= s' < b_1")
    lam = pi.shape
    if witnesses is None:
        witnesses = verify_gls(ctx, pi_prime, height_bound)
    if not witnesses:
        raise ValueError("second path failed GLS verification; cannot join")
    chain_roots = [r for chain in witnesses.chains for r in chain.roots]
    # Walk tau right-to-left on lambda, omitting reflections that act trivially.
    kept: List[bool] = [False] * len(chain_roots)
    evaluation_points: List[Weight] = [weight()] * len(chain_roots)
    x = lam
    for t in range(len(chain_roots) - 1, -1, -1):
        root = chain_roots[t]
        evaluation_points[t] = x
        c = root.coroot_pairing(x)
        if c != 0:
            kept[t] = True
            x = x - c * root.root
    tau_bar_lam = x
    cond2_results = []
    for t, root in enumerate(chain_roots):
        if not root.imaginary:
            continue
        value = s * root.coroot_pairing(evaluation_points[t])
        cond2_results.append((t, kept[t], value, value < 1))
    full_ok = all(ok for _, _, _, ok in cond2_results)
    restricted_ok = all(ok for _, k, _, ok in cond2_results if k)
    if not restricted_ok:
        bad = next((t, v) for t, k, v, ok in cond2_results if k and not ok)
        raise JoinRejected(2, bad)
    last = pi.weights[-1]
    shape_chain = None
    if last != tau_bar_lam:
        shape_chain = find_a_chain(ctx, s, last, tau_bar_lam, height_bound)
        if shape_chain is None:
            raise JoinRejected(1, (format_weight(last), format_weight(tau_bar_lam)))
    ws = list(pi.weights) + [weight()] + list(pi_prime.weights)
    bs = list(pi.breaks[:-1]) + [s, s_prime] + list(pi_prime.breaks[1:])
    pts: List[Tuple[Fraction, Weight]] = [(bs[0], weight())]
    for k, w in enumerate(ws):
        t0, t1 = bs[k], bs[k + 1]
        if t0 == t1:
            continue
        pts.append((t1, pts[-1][1] + (t1 - t0) * w))
    joined = PiecewisePath.from_points(pts)
    return JoinResult(joined, tuple(chain_roots), tuple(kept),
                      restricted_ok, full_ok, shape_chain)
