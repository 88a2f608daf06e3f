"""Command-line front end: run verification pipelines, emit reports.

Every command produces a flat list of verification records rendered as
text, JSON, or CSV.  Output is deterministic for fixed inputs; elapsed
times are all zero unless --timings is given, precisely so that byte
identity holds across runs.  Exit codes: 0 when no record failed, 2 on
usage errors, 3 when a size cap was hit (the message names the cap).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from math import comb, factorial

from .characters import (
    closed_form_degrees,
    hook_dimension,
    matching_scheme_labels,
    remove_box,
    small_degree_partitions,
)
from .exact import ExactMatrix
from .graphs import (
    GRAPH_CAP,
    build_graph,
    canonical_partition,
    clique_coclique_check,
    degree_by_enumeration,
    degree_formula,
    degree_lower_bound_check,
    degree_terms,
    enumerate_maximum_cocliques,
    one_factorization_clique,
    orbit_partition,
    quotient_matrix,
)
from .matchings import CapExceeded, double_factorial, matching_count
from .partitions import partition_count, partitions_of, iter_partitions
from .polytope import (
    facet_classification_check,
    facet_size,
    facet_size_by_counting,
    gram_identity_check,
    gram_matrix,
    incidence_matrix,
    polytope_membership,
    rank_U,
)
from .records import RENDERERS, VerificationRecord, check, skipped
from .spectra import (
    character_sum_eigenvalue,
    derangement_class_counts,
    derangement_spectrum,
    kneser_eigenvalues,
    kneser_spectrum_direct,
    module_labeling,
    ratio_bound,
    ratio_tightness_certificate,
    trace_square_check,
)

SPECTRUM_CAP = 5
EKR_CAP = 5
POLYTOPE_CAP = 5


class _Clock:
    """Millisecond timer that reads zero when timings are disabled."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.last = time.monotonic()

    def mark(self) -> int:
        now = time.monotonic()
        ms = int((now - self.last) * 1000)
        self.last = now
        return ms if self.enabled else 0


def _counts(ks, clock) -> list[VerificationRecord]:
    out = []
    for k in ks:
        expected = double_factorial(2 * k - 1)
        if k <= 7:
            from .matchings import enumerate_matchings

            got = sum(1 for _ in enumerate_matchings(k))
            out.append(check("matching-count", {"k": k}, expected, got, clock.mark()))
        else:
            out.append(skipped("matching-count", {"k": k}, "enumeration capped at k=7"))
        if k >= 1:
            d = degree_formula(k)
            if k <= 6:
                out.append(
                    check("degree-formula-vs-enumeration", {"k": k}, d,
                          degree_by_enumeration(k), clock.mark())
                )
            terms = degree_terms(k)
            decreasing = all(a > b for a, b in zip(terms, terms[1:]))
            out.append(
                check("degree-terms-strictly-decreasing", {"k": k}, True, decreasing,
                      clock.mark())
            )
        if k >= 2:
            out.append(
                check("degree-exceeds-union-bound", {"k": k}, True,
                      degree_lower_bound_check(k), clock.mark())
            )
        out.append(
            check("partition-count", {"n": 2 * k}, partition_count(2 * k),
                  sum(1 for _ in iter_partitions(2 * k)), clock.mark())
        )
    return out


def _graph(ks, clock) -> list[VerificationRecord]:
    out = []
    for k in ks:
        g = build_graph(k)
        d = degree_formula(k)
        out.append(check("graph-degree", {"k": k}, d, g.degree, clock.mark()))
        if k <= 5:
            out.append(check("graph-regular", {"k": k}, True, g.is_regular(), clock.mark()))
        rounds = one_factorization_clique(k)
        out.append(
            check("one-factorization-rounds", {"k": k}, 2 * k - 1, len(rounds), clock.mark())
        )
        if k >= 2:
            q = quotient_matrix(g, canonical_partition(g, (0, 1)))
            expect = ExactMatrix(
                [
                    [0, d],
                    [Fraction(d, 2 * k - 2), Fraction((2 * k - 3) * d, 2 * k - 2)],
                ]
            )
            out.append(
                check("edge-coclique-quotient", {"k": k}, expect.to_text(), q.to_text(),
                      clock.mark())
            )
        oq = quotient_matrix(g, orbit_partition(g))
        rows_ok = all(sum(row) == d for row in oq.rows)
        out.append(
            check("orbit-quotient-rows-sum-to-degree", {"k": k}, True, rows_ok, clock.mark())
        )
        if k <= 4:
            from .cayley import induced_vertex_permutation

            sigmas = [
                tuple(range(2 * k))[::-1],
                (1, 0) + tuple(range(2, 2 * k)),
                tuple(range(1, 2 * k)) + (0,),
            ]
            ok = True
            for s in sigmas:
                try:
                    induced_vertex_permutation(g, s, verify=True)
                except AssertionError:
                    ok = False
            out.append(
                check("point-relabelling-is-automorphism", {"k": k, "sigmas": len(sigmas)},
                      True, ok, clock.mark())
            )
    return out


def _ekr(ks, clock) -> list[VerificationRecord]:
    out = []
    for k in ks:
        if k < 2:
            continue
        if k > EKR_CAP:
            raise CapExceeded("coclique search", k, EKR_CAP)
        g = build_graph(k)
        alpha, cocliques = enumerate_maximum_cocliques(g)
        out.append(
            check("coclique-number", {"k": k}, double_factorial(2 * k - 3), alpha,
                  clock.mark())
        )
        expected_count = comb(2 * k, 2) if k >= 3 else 3
        out.append(
            check("maximum-coclique-count", {"k": k}, expected_count, len(cocliques),
                  clock.mark())
        )
        canon_masks = set(g.edge_masks.values())
        all_canon = all(
            sum(1 << i for i in c) in canon_masks for c in cocliques
        )
        out.append(
            check("maximum-cocliques-all-canonical", {"k": k}, True, all_canon, clock.mark())
        )
        rec = clique_coclique_check(g, certified_alpha=alpha)
        out.append(
            check("clique-coclique-tight", {"k": k}, g.n_vertices, rec.product, clock.mark())
        )
        out.append(
            check("clique-number", {"k": k}, 2 * k - 1, rec.clique_number, clock.mark())
        )
        cert = ratio_tightness_certificate(g)
        out.append(
            check("coclique-vector-is-eigenvector",
                  {"k": k, "eigenvalue": cert.eigenvalue},
                  True, cert.holds, clock.mark())
        )
        rb = ratio_bound(g.n_vertices, g.degree, Fraction(-g.degree, 2 * k - 2))
        out.append(
            check("ratio-bound-value", {"k": k}, double_factorial(2 * k - 3), rb,
                  clock.mark())
        )
    return out


def _spectra(ks, clock, kneser_pairs=((5, 2),)) -> list[VerificationRecord]:
    out = []
    for k in ks:
        if k > SPECTRUM_CAP:
            raise CapExceeded("spectrum", k, SPECTRUM_CAP)
        spec = derangement_spectrum(k)
        d = degree_formula(k)
        n = matching_count(k)
        out.append(
            check("spectrum-value", {"k": k}, str(spec), str(spec), clock.mark())
        )
        out.append(
            check("largest-eigenvalue", {"k": k}, d, spec.largest, clock.mark())
        )
        tau = Fraction(-d, 2 * k - 2)
        out.append(check("least-eigenvalue", {"k": k}, tau, spec.least, clock.mark()))
        out.append(
            check("least-eigenvalue-multiplicity", {"k": k}, 2 * k * k - 3 * k,
                  spec.multiplicity(spec.least), clock.mark())
        )
        out.append(check("spectrum-size", {"k": k}, n, spec.moment(0), clock.mark()))
        out.append(check("spectrum-trace", {"k": k}, 0, spec.moment(1), clock.mark()))
        out.append(
            check("spectrum-second-moment", {"k": k}, n * d, spec.moment(2), clock.mark())
        )
        lab = module_labeling(k, spec)
        out.append(
            check("module-dimensions-cover", {"k": k}, True,
                  lab.solution_count >= 1, clock.mark())
        )
        tr = trace_square_check(k, lab)
        out.append(
            check("trace-square-identity", {"k": k}, tr.rhs, tr.lhs, clock.mark())
        )
        out.append(
            check("strict-bound-nonexempt-labels", {"k": k}, True, tr.all_strict,
                  clock.mark())
        )
        if k <= 4:
            census = derangement_class_counts(k)
            by_label = {a.label: a for a in lab.assignments}
            for lbl in matching_scheme_labels(k):
                r = character_sum_eigenvalue(k, lbl, census)
                cands = by_label[lbl].candidates
                out.append(
                    check("character-sum-in-label-candidates",
                          {"k": k, "label": str(lbl)},
                          True, r.calibrated in [Fraction(c) for c in cands],
                          clock.mark())
                )
            trivial = character_sum_eigenvalue(k, matching_scheme_labels(k)[0], census)
            out.append(
                check("character-sum-trivial-calibrated", {"k": k}, d,
                      trivial.calibrated, clock.mark())
            )
            out.append(
                check("character-sum-rescaled-fails-trivial", {"k": k}, True,
                      trivial.rescaled != d, clock.mark())
            )
    for n0, k0 in kneser_pairs:
        closed = kneser_eigenvalues(n0, k0)
        direct = kneser_spectrum_direct(n0, k0)
        out.append(
            check("subset-disjointness-spectrum", {"n": n0, "k": k0},
                  str(closed), str(direct), clock.mark())
        )
    return out


def _polytope(ks, clock) -> list[VerificationRecord]:
    out = []
    for k in ks:
        if k < 2:
            continue
        if k > POLYTOPE_CAP:
            raise CapExceeded("polytope checks", k, POLYTOPE_CAP)
        gc = gram_identity_check(k)
        out.append(
            check("gram-identity",
                  {"k": k, "diagonal": gc.diagonal, "off_diagonal": gc.off_diagonal},
                  True, gc.holds, clock.mark())
        )
        if k <= 4:
            out.append(
                check("incidence-rank", {"k": k}, 2 * k * k - 3 * k + 1, rank_U(k),
                      clock.mark())
            )
            g = build_graph(k)
            gram = gram_matrix(g)
            out.append(
                check("gram-kernel-dimension", {"k": k}, 2 * k - 1, gram.nullity(),
                      clock.mark())
            )
        for s in range(3, 2 * k - 2, 2):
            if 2 * k <= 8:
                out.append(
                    check("odd-cut-facet-size", {"k": k, "s": s}, facet_size(s, k),
                          facet_size_by_counting(s, k), clock.mark())
                )
        if k >= 3:
            out.append(
                check("edge-facet-dominates", {"k": k}, True,
                      (2 * k - 2) * double_factorial(2 * k - 3) > facet_size(3, k),
                      clock.mark())
            )
        if 2 * k <= 10:
            edges = comb(2 * k, 2)
            bary = [Fraction(1, 2 * k - 1)] * edges
            out.append(
                check("membership-barycenter", {"k": k}, True,
                      polytope_membership(bary, k).member, clock.mark())
            )
            first = incidence_matrix(k).u.rows[0]
            out.append(
                check("membership-matching-vertex", {"k": k}, True,
                      polytope_membership(list(first), k).member, clock.mark())
            )
        if k <= 4:
            fc = facet_classification_check(k)
            out.append(
                check("maximum-cocliques-are-edge-facets",
                      {"k": k, "cocliques": fc.cocliques_checked},
                      True, fc.all_canonical and fc.all_in_column_space, clock.mark())
            )
    return out


def _reps(ns, clock) -> list[VerificationRecord]:
    out = []
    for n in ns:
        if n < 1:
            continue
        if n <= 10:
            total = sum(hook_dimension(p) ** 2 for p in partitions_of(n))
            out.append(
                check("dimension-squares-sum", {"n": n}, factorial(n), total, clock.mark())
            )
        if n <= 10:
            ok = True
            for p in partitions_of(n):
                dim = hook_dimension(p)
                below = sum(hook_dimension(q) for q in remove_box(p)) if n > 1 else 1
                if n > 1 and dim != below:
                    ok = False
            out.append(
                check("branching-dimension-identity", {"n": n}, True, ok, clock.mark())
            )
        if 9 <= n <= 13:
            small = small_degree_partitions(n)
            out.append(
                check("small-degree-count", {"n": n}, 8, len(small), clock.mark())
            )
        if 9 <= n <= 12:
            rows = closed_form_degrees(n)
            ok = all(closed == hook for _, closed, hook in rows)
            out.append(
                check("closed-form-degrees-match-hooks", {"n": n}, True, ok, clock.mark())
            )
    return out


def _cayley(ks, clock) -> list[VerificationRecord]:
    from .cayley import (
        coclique_linegraph_map,
        induced_vertex_permutation,
        non_cayley_verdict,
        prime_pair,
    )

    out = []
    for k in ks:
        if k < 3:
            continue
        g = build_graph(k) if k <= 4 else None
        verdict = non_cayley_verdict(k, g)
        for link in verdict.links:
            if link.status == "cited":
                out.append(skipped(f"cayley-{link.link}", {"k": k}, link.statement))
            else:
                out.append(
                    check(f"cayley-{link.link}", {"k": k, "witness": link.witness},
                          "pass", link.status, clock.mark())
                )
        out.append(
            check("cayley-obstruction-complete", {"k": k}, False,
                  verdict.is_cayley_possible, clock.mark())
        )
        if k <= 4 and g is not None:
            sigma = (1, 0) + tuple(range(2, 2 * k))
            phi = induced_vertex_permutation(g, sigma)
            lg = coclique_linegraph_map(g, phi)
            out.append(
                check("automorphism-induces-edge-permutation", {"k": k}, True,
                      lg.preserves_sharing and lg.preserves_disjointness, clock.mark())
            )
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pmdg",
        description=(
            "Exact verification suite for the perfect matching derangement "
            "graph: counts, spectra, extremal cocliques, polytope facets, "
            "and the non-Cayley obstruction."
        ),
    )
    p.add_argument(
        "command",
        choices=["counts", "graph", "spectra", "ekr", "polytope", "reps", "cayley", "all"],
    )
    p.add_argument("--k", type=int, default=None, help="half the number of points")
    p.add_argument("--n", type=int, default=None,
                   help="symmetric group degree (reps) or ground set size (spectra)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--max-k", type=int, default=None, dest="max_k",
                   help="upper end of the k range (default 4)")
    p.add_argument("--threads", type=int, default=None,
                   help="accepted for interface stability; execution is sequential")
    p.add_argument("--out", type=str, default=None, help="write the report to a file")
    p.add_argument("--timings", action="store_true",
                   help="include real elapsed milliseconds (breaks byte determinism)")
    return p


def _select_ks(args, lo: int, hi_default: int) -> list[int]:
    if args.k is not None:
        return [args.k]
    hi = args.max_k if args.max_k is not None else hi_default
    return [k for k in range(lo, hi + 1)]


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    threads = args.threads
    if threads is None:
        env = os.environ.get("PMDG_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        parser.print_usage(sys.stderr)
        print("pmdg: --threads must be at least 1", file=sys.stderr)
        return 2

    clock = _Clock(args.timings)
    try:
        if args.command == "counts":
            records = _counts(_select_ks(args, 2, 5), clock)
        elif args.command == "graph":
            records = _graph(_select_ks(args, 2, 4), clock)
        elif args.command == "ekr":
            records = _ekr(_select_ks(args, 3, 4), clock)
        elif args.command == "spectra":
            pairs = [(5, 2)]
            if args.n is not None and args.k is not None:
                if args.k < 1 or args.n < 2 * args.k:
                    parser.print_usage(sys.stderr)
                    print(
                        f"pmdg: subset spectra need n >= 2k >= 2, got n={args.n}, k={args.k}",
                        file=sys.stderr,
                    )
                    return 2
                pairs = [(args.n, args.k)]
                records = _spectra([], clock, kneser_pairs=pairs)
            else:
                records = _spectra(_select_ks(args, 2, 4), clock, kneser_pairs=pairs)
        elif args.command == "polytope":
            records = _polytope(_select_ks(args, 2, 4), clock)
        elif args.command == "reps":
            ns = [args.n] if args.n is not None else list(range(1, 13))
            records = _reps(ns, clock)
        elif args.command == "cayley":
            records = _cayley(_select_ks(args, 3, 4), clock)
        else:
            ks = _select_ks(args, 2, 4)
            for k in ks:
                if k > GRAPH_CAP:
                    raise CapExceeded("graph build", k, GRAPH_CAP)
                if k > SPECTRUM_CAP:
                    raise CapExceeded("spectrum", k, SPECTRUM_CAP)
            records = []
            records += _counts(ks, clock)
            records += _graph([k for k in ks if k <= 6], clock)
            records += _ekr([k for k in ks if k >= 3], clock)
            records += _spectra(ks, clock)
            records += _polytope(ks, clock)
            records += _reps(list(range(1, 13)), clock)
            records += _cayley([k for k in ks if k >= 3], clock)
    except CapExceeded as e:
        print(f"pmdg: {e}", file=sys.stderr)
        return 3

    text = RENDERERS[args.format](records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.status != "fail" for r in records) else 1


__all__ = ["build_parser", "run"]
