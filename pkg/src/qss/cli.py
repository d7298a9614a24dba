"""Command-line front end.

Code files are plain text::

    # comments and blank lines are ignored
    field: p=2 m=1
    poly: 1 1 1          # optional, ascending degree, only for m > 1
    rows: k=6 n=11
    1 0 0 0 0 0 0 1 0 0 1
    ...

Exit codes: 0 success, 1 validation failure or disagreement, 2 resource
guard refusal, 3 input/parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from collections.abc import Sequence
from pathlib import Path

from . import access, codes, css, qsim
from .codes import LinearCode, code_from_generator, format_vector
from .errors import InputError, NotAuthorizedWitness, ParseError, QssError, ResourceGuard, ValidationError
from .gf import FieldSpec, make_field

EXIT_OK, EXIT_INVALID, EXIT_GUARD, EXIT_INPUT = 0, 1, 2, 3

_FIELD_RE = re.compile(r"^field:\s*p\s*=\s*(\d+)\s+m\s*=\s*(\d+)$")
_ROWS_RE = re.compile(r"^rows:\s*k\s*=\s*(\d+)\s+n\s*=\s*(\d+)$")
_POLY_RE = re.compile(r"^poly:((?:\s+\d+)+)$")


################################################################################
# code files


def parse_code_text(text: str) -> LinearCode:
    spec: FieldSpec | None = None
    p = m = None
    poly: list[int] | None = None
    k = n = None
    rows: list[list[int]] = []
    last = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = number
        if p is None:
            match = _FIELD_RE.match(line)
            if not match:
                raise ParseError("expected 'field: p=<int> m=<int>'", number)
            p, m = int(match[1]), int(match[2])
            continue
        if k is None:
            match = _POLY_RE.match(line)
            if match and poly is None:
                poly = [int(c) for c in match[1].split()]
                continue
            match = _ROWS_RE.match(line)
            if not match:
                raise ParseError("expected 'rows: k=<int> n=<int>'", number)
            k, n = int(match[1]), int(match[2])
            if k < 1 or n < 1:
                raise ParseError("k and n must be positive", number)
            spec = make_field(p, m, poly)
            continue
        assert spec is not None and n is not None
        if len(rows) == k:
            raise ParseError(f"more than k={k} rows", number)
        try:
            values = [int(v) for v in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", number) from None
        if len(values) != n:
            raise ParseError(f"expected {n} entries, got {len(values)}", number)
        bad = [v for v in values if not 0 <= v < spec.q]
        if bad:
            raise ParseError(f"entry {bad[0]} outside [0, {spec.q})", number)
        rows.append(values)
    if p is None:
        raise ParseError("missing field header", last or None)
    if k is None or spec is None:
        raise ParseError("missing rows header", last or None)
    if len(rows) != k:
        raise ParseError(f"expected k={k} rows, got {len(rows)}", last)
    return code_from_generator(spec, rows)


def parse_code_file(path: str | Path) -> LinearCode:
    return parse_code_text(Path(path).read_text(encoding="utf-8"))


def format_code(code: LinearCode, comment: str | None = None) -> str:
    spec = code.spec
    lines = []
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append(f"field: p={spec.p} m={spec.m}")
    if spec.m > 1:
        lines.append("poly: " + " ".join(str(c) for c in spec.poly or ()))
    lines.append(f"rows: k={code.k} n={code.n}")
    lines += [" ".join(str(int(v)) for v in row) for row in code.G]
    return "\n".join(lines) + "\n"


def write_code_file(code: LinearCode, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(code, comment), encoding="utf-8")


################################################################################
# flag parsing


def parse_vector(text: str, n: int, q: int) -> list[int]:
    text = text.strip()
    if "," in text or q > 10:
        parts = [t for t in text.split(",") if t.strip()]
    else:
        parts = list(text)
    try:
        values = [int(v) for v in parts]
    except ValueError:
        raise ParseError(f"cannot parse vector {text!r}") from None
    if len(values) != n:
        raise ParseError(f"vector {text!r} has {len(values)} entries, expected {n}")
    return values


def parse_set(text: str, n: int) -> access.PartySet:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"cannot parse party set {text!r}") from None
    try:
        return access.party_set(values, n)
    except QssError as exc:
        raise ParseError(str(exc)) from None


################################################################################
# reports


def _set_key(T: Sequence[int]) -> str:
    return ",".join(str(t) for t in T)


def _complex(z: complex) -> list[float]:
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


def scheme_summary(scheme: css.QssScheme, structure: access.AccessStructure) -> dict:
    return {
        "n": scheme.n,
        "k": scheme.k,
        "q": scheme.q,
        "d": scheme.d,
        "pure": scheme.pure,
        "g": format_vector(scheme.g.vector),
        "beta": int(scheme.beta),
        "gamma_min": [list(T) for T in structure.gamma_min],
        "multiplicity": {_set_key(T): c for T, c in structure.multiplicity.items()},
    }


def emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _witness_str(verdict: access.OracleVerdict) -> str | None:
    return str(verdict.witness) if verdict.witness is not None else None


################################################################################
# commands


class _Context:
    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        data = Path(args.code).read_bytes()
        self.digest = hashlib.sha256(data).hexdigest()
        self.code = parse_code_text(data.decode("utf-8"))
        g = parse_vector(args.g, self.code.n, self.code.spec.q) if args.g else None
        self.scheme = css.build_scheme(self.code, g=g, allow_impure=args.allow_impure)
        self.structure = access.gamma_from_minimal_codewords(self.scheme)

    def report(self, ok: bool, **extra) -> dict:
        out = {"command": self.args.command, "input_sha256": self.digest, "ok": ok}
        out.update(scheme_summary(self.scheme, self.structure))
        out.update(extra)
        return out

    def header(self) -> list[str]:
        s = self.scheme
        return [
            f"[[{s.n},1,{s.d}]]_{s.q} scheme from a [{s.n},{s.k}] code over {s.spec!r}",
            f"g = {s.g}  beta = g.g = {s.beta}  pure = {s.pure}",
        ]


def cmd_validate(ctx: _Context) -> int:
    check = css.check_pairwise_products(ctx.scheme)
    report = ctx.report(
        check.passed,
        pair_check={"pairs": check.pairs_checked, "passed": check.passed, "d_odd": check.d_odd, "notes": check.notes},
    )
    lines = ctx.header() + [
        f"pairwise products over C \\ C^perp: {'pass' if check.passed else 'FAIL'} ({check.pairs_checked} pairs)",
    ] + check.notes
    emit(report, ctx.args.json, lines)
    return EXIT_OK if check.passed else EXIT_INVALID


def cmd_stabilizer(ctx: _Context) -> int:
    S = css.stabilizer_matrix(ctx.scheme)
    report = ctx.report(True, stabilizer=S.tolist())
    lines = [" ".join(str(int(v)) for v in row[: ctx.scheme.n]) + " | " + " ".join(str(int(v)) for v in row[ctx.scheme.n :])
             for row in S]
    emit(report, ctx.args.json, lines)
    return EXIT_OK


def cmd_minimal(ctx: _Context) -> int:
    words = codes.minimal_codewords_outside_dual(ctx.code)
    rows = [{"codeword": format_vector(w.vector), "weight": w.weight, "support": list(w.support)} for w in words]
    lines = [f"{r['codeword']}  weight {r['weight']}  support {{{_set_key(r['support'])}}}" for r in rows]
    emit(ctx.report(True, minimal_codewords=rows), ctx.args.json, lines)
    return EXIT_OK


def cmd_gamma(ctx: _Context) -> int:
    st = ctx.structure
    hist = st.size_histogram()
    lines = ctx.header() + [f"{len(st.gamma_min)} minimal authorized sets, sizes {hist}"]
    lines += ["{" + ", ".join(str(t) for t in T) + "}" for T in st.gamma_min]
    emit(ctx.report(st.is_antichain(), sizes={str(k): v for k, v in hist.items()}), ctx.args.json, lines)
    return EXIT_OK


def _secrets(ctx: _Context) -> list[int]:
    if ctx.args.secret is None:
        return list(range(ctx.scheme.q))
    return [ctx.scheme.spec.check(ctx.args.secret)]


def cmd_encode(ctx: _Context) -> int:
    out, lines = [], []
    for s in _secrets(ctx):
        state = qsim.encode_secret(ctx.scheme, s, max_dim=ctx.args.max_dim)
        terms = state.nonzero(ctx.args.eps)
        out.append({"secret": s, "terms": [{"label": format_vector(x), "amplitude": _complex(z)} for x, z in terms]})
        lines.append(f"secret {s}: {len(terms)} basis states, amplitude {abs(terms[0][1]):.6g}")
        lines += [f"  |{format_vector(x)}>" for x, _ in terms]
    emit(ctx.report(True, states=out), ctx.args.json, lines)
    return EXIT_OK


def _witness_for(ctx: _Context, T: access.PartySet) -> codes.Codeword:
    for word in codes.minimal_codewords_outside_dual(ctx.code):
        if set(word.support) <= set(T):
            return word
    raise NotAuthorizedWitness(f"{{{_set_key(T)}}} contains no minimal authorized set")


def cmd_recover(ctx: _Context) -> int:
    scheme, eps = ctx.scheme, ctx.args.eps
    targets = [parse_set(ctx.args.set, scheme.n)] if ctx.args.set else ctx.structure.gamma_min
    rows, lines, ok = [], [], True
    for s in _secrets(ctx):
        state = qsim.encode_secret(scheme, s, max_dim=ctx.args.max_dim)
        labels = [x for x, _ in state.nonzero(eps)]
        for T in targets:
            word = _witness_for(ctx, T)
            result = qsim.recover(scheme, state, word, eps=eps, max_dim=ctx.args.max_dim)
            fidelity = abs(qsim.inner(state, result.post_state)) ** 2
            row = {
                "set": list(T),
                "witness": format_vector(word.vector),
                "secret": s,
                "recovered": int(result.secret),
                "ancilla": result.ancilla_value,
                "ancilla_mass": round(result.ancilla_mass, 12),
                "fidelity": round(fidelity, 12),
            }
            good = int(result.secret) == s and fidelity >= 1 - eps
            if scheme.q == 2:
                parities = sorted(qsim.share_parity(labels, word.support))
                row["parity"] = parities
                good = good and parities == [s]
            row["ok"] = good
            ok = ok and good
            rows.append(row)
            lines.append(f"secret {s} set {{{_set_key(T)}}}: recovered {int(result.secret)}"
                         f" fidelity {fidelity:.12f} {'ok' if good else 'FAIL'}")
    emit(ctx.report(ok, recoveries=rows), ctx.args.json, lines)
    return EXIT_OK if ok else EXIT_INVALID


def _oracle_kwargs(args: argparse.Namespace) -> dict:
    return {"eps": args.eps, "t_cap": args.t_cap, "force": args.force, "max_dim": args.max_dim}


def cmd_oracle(ctx: _Context) -> int:
    kwargs = _oracle_kwargs(ctx.args)
    if ctx.args.set is not None:
        T = parse_set(ctx.args.set, ctx.scheme.n)
        auth = access.is_authorized_oracle(ctx.scheme, T, **kwargs)
        unauth = access.is_unauthorized_oracle(ctx.scheme, T, **kwargs)
        ok = bool(auth) != bool(unauth)
        result = {
            "set": list(T),
            "authorized": auth.holds,
            "unauthorized": unauth.holds,
            "authorized_witness": _witness_str(auth),
            "unauthorized_witness": _witness_str(unauth),
        }
        lines = [
            f"{{{_set_key(T)}}}: authorized={auth.holds} unauthorized={unauth.holds}",
            *(f"  {name} witness {w}" for name, w in (("authorized", _witness_str(auth)),
                                                     ("unauthorized", _witness_str(unauth))) if w),
        ]
        emit(ctx.report(ok, oracle=result), ctx.args.json, lines)
        return EXIT_OK if ok else EXIT_INVALID

    structure, rep = access.full_oracle_structure(ctx.scheme, **kwargs)
    result = {
        "subsets_scanned": rep.subsets_scanned,
        "gamma_min": [list(T) for T in structure.gamma_min],
        "dichotomy_violations": [list(T) for T in rep.dichotomy_violations],
        "monotonicity_violations": [[list(a), list(b)] for a, b in rep.monotonicity_violations],
        "complement_conflicts": [list(T) for T in rep.complement_conflicts],
    }
    lines = [f"scanned {rep.subsets_scanned} subsets; invariants {'ok' if rep.ok else 'VIOLATED'}",
             f"{len(structure.gamma_min)} minimal authorized sets:"]
    lines += ["{" + ", ".join(str(t) for t in T) + "}" for T in structure.gamma_min]
    emit(ctx.report(rep.ok, oracle=result), ctx.args.json, lines)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_compare(ctx: _Context) -> int:
    structure, rep = access.full_oracle_structure(ctx.scheme, **_oracle_kwargs(ctx.args))
    diff = access.compare_structures(ctx.structure, structure)
    ok = diff.agree and rep.ok
    result = {
        "agree": diff.agree,
        "only_minimal_codewords": [list(T) for T in diff.only_in_first],
        "only_oracle": [list(T) for T in diff.only_in_second],
        "oracle_invariants_ok": rep.ok,
    }
    lines = [f"minimal codewords vs oracle: {'agree' if diff.agree else 'DIFFER'}"
             f" ({len(ctx.structure.gamma_min)} vs {len(structure.gamma_min)} sets)"]
    lines += [f"  only from codewords: {{{_set_key(T)}}}" for T in diff.only_in_first]
    lines += [f"  only from oracle: {{{_set_key(T)}}}" for T in diff.only_in_second]
    if not rep.ok:
        lines.append("  oracle invariants violated")
    emit(ctx.report(ok, compare=result), ctx.args.json, lines)
    return EXIT_OK if ok else EXIT_INVALID


COMMANDS = {
    "validate": (cmd_validate, "check the CSS pair and pairwise dot products"),
    "stabilizer": (cmd_stabilizer, "print the stabilizer matrix [H 0; 0 H]"),
    "minimal": (cmd_minimal, "list minimal codewords outside the dual"),
    "gamma": (cmd_gamma, "minimal access structure from minimal codewords"),
    "encode": (cmd_encode, "encoded statevector support for each secret"),
    "recover": (cmd_recover, "simulate share recovery on the statevector"),
    "oracle": (cmd_oracle, "brute-force access structure from expectation values"),
    "compare": (cmd_compare, "compare the codeword and oracle access structures"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qss", description="Classical secret sharing with CSS codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("code", help="code file with generator rows")
        p.add_argument("--g", help="coset representative g in C \\ C^perp")
        p.add_argument("--allow-impure", action="store_true", help="accept impure codes")
        p.add_argument("--force", action="store_true", help="override operator and statevector caps")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--eps", type=float, default=qsim.EPS)
        p.add_argument("--max-dim", type=int, default=None, help="statevector amplitude cap")
        p.add_argument("--t-cap", type=int, default=None, help="operator count cap per party set")
        if name in ("encode", "recover"):
            p.add_argument("--secret", type=int, default=None)
        if name in ("recover", "oracle"):
            p.add_argument("--set", default=None, help="comma-separated 1-indexed parties")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = _Context(args)
        return COMMANDS[args.command][0](ctx)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceGuard as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, OSError, UnicodeDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
