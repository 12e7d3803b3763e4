"""Golden reference suite: fixtures pinning the worked examples.

Each fixture file under ``fixtures/golden`` records one worked example
(matrices, cluster variables, exchange matrices, counts, monomials) and is
checked by the matching runner here.  The CLI ``golden`` subcommand and the
acceptance tests both drive :func:`run_all`.
"""
from __future__ import annotations

import json
from importlib import resources

from .combinat import BraidWord, parse_permutation
from .exactalg import parse_poly, parse_rf
from . import cluster, latticeiso, richardson, splice, symmat
from .cluster import ExtendedExchangeMatrix
from .splice import CheckReport
from .symmat import RF, braid_word_matrix, minor, symbolic_vars


def fixture_names() -> list[str]:
    root = resources.files("braidcells").joinpath("fixtures/golden")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    root = resources.files("braidcells").joinpath("fixtures/golden")
    return json.loads(root.joinpath(name).read_text())


def run_fixture(data: dict) -> CheckReport:
    kind = data["kind"]
    runner = _RUNNERS.get(kind)
    if runner is None:
        raise ValueError(f"unknown fixture kind {kind!r}")
    report = CheckReport(data["name"])
    runner(data, report)
    return report


def run_all() -> list[CheckReport]:
    return [run_fixture(load_fixture(name)) for name in fixture_names()]


def _word(data, key="word") -> BraidWord:
    return BraidWord.parse(data["k"], data[key])


def _check_word_matrix(data, report):
    beta = _word(data)
    zs = symbolic_vars("z", len(beta))
    m = braid_word_matrix(beta, zs, RF)
    k = beta.k
    for i in range(k):
        for j in range(k):
            want = parse_rf(data["entries"][i][j])
            report.record(("entry", i + 1, j + 1), m[i][j] == want)
    for spec in data["minors"]:
        got = minor(m, spec["rows"], spec["cols"])
        report.record(("minor", tuple(spec["rows"])), got == parse_rf(spec["value"]))
    from .combinat import demazure_product, Permutation
    report.record("demazure",
                  demazure_product(beta) == Permutation(data["demazure"]))


def _check_inductive_variables(data, report):
    beta = _word(data)
    records = cluster.inductive_minor_factors(beta)
    positions = [m for m, _, _ in records]
    report.record("positions", positions == data["positions"])
    variables = [v for _, _, v in records]
    for idx, text in enumerate(data["variables"], start=1):
        report.record(("variable", idx),
                      idx <= len(variables) and variables[idx - 1] == parse_poly(text))
    chart = data.get("prefix_chart")
    if chart:
        r1 = chart["r1"]
        m1 = braid_word_matrix(beta[:r1], symbolic_vars("z", r1), RF)
        for rows, factors in zip(chart["minor_rows"], chart["factors_as_variables"]):
            got = minor(m1, rows, range(1, len(rows) + 1))
            want = RF.one
            for f in factors:
                want = want * RF.of(variables[f - 1])
            report.record(("chart-minor", tuple(rows)), got == want)
    seed_q = data.get("seed_quiver")
    if seed_q:
        q = cluster.quiver_from_arrows(seed_q["n"], seed_q["frozen"],
                                       [tuple(a) for a in seed_q["arrows"]])
        qf = cluster.freeze_quiver(q, data["chart_freeze"])
        want = {tuple(a) for a in data["chart_mutable_arrows"]}
        report.record("chart-freeze", qf.mutable_part_arrows() == want)


def _exchange_matrix_from_lists(rows, cols, entries) -> ExtendedExchangeMatrix:
    return ExtendedExchangeMatrix(tuple(rows), tuple(cols),
                                  tuple(tuple(r) for r in entries))


def _check_exchange_witness(data, report):
    qd = data["quiver"]
    q = cluster.quiver_from_arrows(qd["n"], qd["frozen"],
                                   [tuple(a) for a in qd["arrows"]])
    btilde = cluster.extended_exchange_matrix(q)
    report.record("btilde", btilde.to_lists() == data["btilde"])
    qf = cluster.freeze_quiver(q, data["freeze"])
    bcirc = cluster.extended_exchange_matrix(qf)
    report.record("bcirc-rows", list(bcirc.rows) == data["bcirc_rows"])
    report.record("bcirc", bcirc.to_lists() == data["bcirc"])
    n = bcirc.n_mutable
    bprod = _exchange_matrix_from_lists(bcirc.rows, bcirc.cols, data["bprod"])
    rows = [[1 if i == j else 0 for j in range(len(bcirc.rows))] for i in range(n)]
    for p_row, q_row in zip(data["witness_p"], data["witness_q"]):
        rows.append(list(p_row) + list(q_row))
    paper = latticeiso.WitnessMatrix(n, len(bcirc.rows) - n, rows)
    report.record("paper-witness",
                  latticeiso.verify_witness(paper, bcirc, bprod))
    found = latticeiso.find_witness(bcirc, bprod, bound=data["search_bound"])
    report.record("witness-found",
                  found is not None
                  and latticeiso.verify_witness(found, bcirc, bprod))


def _check_richardson_counts(data, report):
    k = data["k"]
    v = parse_permutation(k, data["v"])
    w = parse_permutation(k, data["w"])
    word = richardson.positive_lift(w)
    m = braid_word_matrix(word, symbolic_vars("z", len(word)), RF)
    for i in range(k):
        for j in range(k):
            report.record(("entry", i + 1, j + 1),
                          m[i][j] == parse_rf(data["lift_matrix"][i][j]))
    spec = data["inspected_minor"]
    report.record("inspected-minor",
                  minor(m, spec["rows"], spec["cols"]) == parse_rf(spec["value"]))
    rep = richardson.s_count(v, w)
    report.record("s", rep.s == data["s"] and rep.complete)
    report.record("f", richardson.frozen_count(v, w) == data["f_vw"])
    report.record("f-base",
                  richardson.frozen_count_base(w) == data["f_ew"]
                  and richardson.frozen_count_base(v) == data["f_ev"])
    seed = cluster.dbs_seed(word)
    for idx, text in enumerate(data["seed_variables"], start=1):
        report.record(("seed-variable", idx),
                      seed.variable(idx) == parse_rf(text))
    report.record("seed-frozen",
                  sorted(seed.quiver.frozen) == data["seed_frozen"])
    mutated = cluster.mutate(seed, data["mutate_vertex"])
    report.record("mutation", mutated.variable(data["mutate_vertex"])
                  == parse_rf(data["mutated_variable"]))


def _check_splice_monomials(data, report):
    beta = _word(data)
    r1 = data["r1"]
    for ell_s, expo in data["monomials"].items():
        ell = int(ell_s)
        want = {int(s): e for s, e in expo.items()}
        report.record(("formula", ell),
                      splice.splice_monomial(beta, r1, ell) == want)
        report.record(("strands", ell),
                      splice.splice_monomial_strands(beta, r1, ell) == want)
    ratios = splice.verify_exchange_ratios(beta, r1)
    for v in data["ratio_vertices"]:
        report.record(("ratio", v), ("vertex", v) not in ratios.failures)
    report.record("ratios-all", ratios.ok)
    f, f1, f2, s = splice.dbs_frozen_counts(beta, r1)
    report.record("frozen-inequality", f1 + f2 >= f and f1 + f2 == f + s)


def _check_braid_quiver(data, report):
    beta = _word(data)
    q = cluster.quiver_from_braid(beta)
    report.record("frozen", sorted(q.frozen) == data["frozen"])
    report.record("arrows",
                  set(q.arrow_list()) == {tuple(a) for a in data["arrows"]})
    report.record("half-arrows",
                  cluster.quiver_from_braid_halfarrows(beta) == q)
    r1 = data["split_r1"]
    qf = cluster.freeze_quiver(q, data["freeze"])
    q1 = cluster.quiver_from_braid(beta[:r1])
    q2 = cluster.quiver_from_braid(beta[r1:])
    shifted = {(s + r1, t + r1, m) for (s, t, m) in q2.mutable_part_arrows()}
    report.record("split", qf.mutable_part_arrows()
                  == q1.mutable_part_arrows() | shifted)


def _check_strand_monomial(data, report):
    k = data["k"]
    prefix = BraidWord.parse(k, data["prefix_word"])
    suffix = BraidWord.parse(k, data["suffix_word"])
    beta = prefix * suffix
    r1 = len(prefix)
    ell = r1 + data["ell_offset"]
    want = {int(s): e for s, e in data["monomial"].items()}
    report.record("formula", splice.splice_monomial(beta, r1, ell) == want)
    report.record("strands", splice.splice_monomial_strands(beta, r1, ell) == want)


def _check_demazure(data, report):
    from .combinat import Permutation, demazure_product
    for case in data["cases"]:
        beta = BraidWord.parse(case["k"], case["word"])
        report.record(case["word"],
                      demazure_product(beta) == Permutation(case["delta"]))


_RUNNERS = {
    "word-matrix": _check_word_matrix,
    "inductive-variables": _check_inductive_variables,
    "exchange-witness": _check_exchange_witness,
    "richardson-counts": _check_richardson_counts,
    "splice-monomials": _check_splice_monomials,
    "braid-quiver": _check_braid_quiver,
    "strand-monomial": _check_strand_monomial,
    "demazure": _check_demazure,
}
