"""Property suites shared by the CLI and the acceptance tests."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import geoderiv, twist, upsilon
from .operad import parallel_defect, sequential_defect, shift_labels, white_labels
from .trees import ALPHA, encode
from .twist import Report

log = logging.getLogger(__name__)


@dataclass
class VerifyConfig:
    max_vertices: int = 4
    max_alpha: int = 2
    n: int = 2
    d: int = 3
    m: int = 2
    seed: int = 7
    seeds: int = 3
    order: int = 1


def operad_axioms(max_vertices: int = 4) -> Report:
    """Sequential and parallel composition axioms for all triples of labelled shapes."""
    trees = [t for t in twist.dg_trees(max_vertices, 0) if white_labels(t)]
    rep = Report(f"operad axioms (<= {max_vertices} vertices)")
    for i, t1 in enumerate(trees):
        log.info("operad axioms: outer tree %d/%d", i + 1, len(trees))
        l1 = white_labels(t1)
        for t2 in trees:
            s2 = shift_labels(t2, 100)
            for t3 in trees:
                s3 = shift_labels(t3, 200)
                for u in l1:
                    for v in white_labels(s2):
                        rep.checked += 1
                        if sequential_defect(t1, u, s2, v, s3):
                            rep.failures.append(("sequential", encode(t1), u, encode(s2), v, encode(s3)))
                    for v in l1:
                        if v != u:
                            rep.checked += 1
                            if parallel_defect(t1, u, s2, v, s3):
                                rep.failures.append(("parallel", encode(t1), u, encode(s2), v, encode(s3)))
    return rep


def d_squared(max_vertices: int = 6, max_alpha: int = 2) -> Report:
    trees = twist.dg_trees(max_vertices, max_alpha)
    log.info("d^2: %d trees", len(trees))
    return twist.check_square_zero(trees, f"d_full^2 = 0 (<= {max_vertices} vertices, <= {max_alpha} alpha)")


def correspondence(max_vertices: int = 4) -> Report:
    rep = twist.verify_degree0_correspondence(max_vertices)
    rep.name = f"degree-0 correspondence (<= {max_vertices} vertices)"
    return rep


@dataclass
class ChainRow:
    element: str
    kind: str
    in_kernel: bool
    infinitesimal: list = field(default_factory=list)
    chain_rule: bool | None = None

    def as_dict(self) -> dict:
        return {"element": self.element, "kind": self.kind, "in_kernel": self.in_kernel,
                "infinitesimal": self.infinitesimal, "chain_rule": self.chain_rule}


def chain_rule_rows(cfg: VerifyConfig) -> tuple[Report, list[ChainRow]]:
    """Span generators must pass every check; non-kernel trees must fail for some seed."""
    rep = Report(f"chain rule (pairs <= {cfg.n}, d={cfg.d}, m={cfg.m}, seed={cfg.seed})")
    rows: list[ChainRow] = []
    datas = [upsilon.random_data(cfg.d, cfg.m, cfg.seed + k) for k in range(cfg.seeds)]
    phi = upsilon.random_diffeo(cfg.d, cfg.seed)
    for k in range(1, cfg.n + 1):
        md = (2,) * k
        span = geoderiv.covariant_span(md)
        moved = upsilon.diffeo_act(phi, datas[0], cfg.order + 4)
        for i in span.independent:
            g = span.generators[i]
            row = ChainRow(geoderiv.word_str(span.words[i]), "generator", True)
            row.infinitesimal = [upsilon.infinitesimal_check(g, D, cfg.order).passed for D in datas]
            row.chain_rule = upsilon.chain_rule_check(g, datas[0], phi, cfg.order, moved=moved).passed
            rep.checked += 1
            if not (all(row.infinitesimal) and row.chain_rule):
                rep.failures.append(row.element)
            rows.append(row)
        kern = geoderiv.kernel_basis_geo(md)
        for t in kern.basis_trees:
            in_kernel = not geoderiv.symmetrize(geoderiv.hat_phi_geo(t), kern.blocks)
            row = ChainRow(encode(t), "tree", in_kernel)
            row.infinitesimal = [upsilon.infinitesimal_check(t, D, cfg.order).passed for D in datas]
            rep.checked += 1
            if in_kernel != all(row.infinitesimal):
                rep.failures.append(row.element)
            rows.append(row)
    return rep, rows


SUITES = ("operad-axioms", "d-squared", "correspondence", "chain-rule")


def run_suite(name: str, cfg: VerifyConfig) -> tuple[Report, list]:
    if name == "operad-axioms":
        return operad_axioms(cfg.max_vertices), []
    if name == "d-squared":
        return d_squared(cfg.max_vertices, cfg.max_alpha), []
    if name == "correspondence":
        return correspondence(cfg.max_vertices), []
    if name == "chain-rule":
        return chain_rule_rows(cfg)
    raise KeyError(name)
