"""Command line front end.

One executable, four subcommands:

* count: tabulate schedule-word counts and per-pulse rates.
* codebook: build small codebooks, rank/unrank words, replay a word
  against the buffer rule.
* concat: plan metrics and the block codec for long words.
* relay: rate sweep over the three-node network parameter grid.

Tabular output is CSV (CRLF rows, header always present, '.' decimal
point, reals at 12 significant digits, counts as exact decimal strings).
With --csv/--out the file is written atomically (temp file plus rename)
and a short metadata line goes to stdout; otherwise the table itself
goes to stdout.  The same argv always produces byte-identical files.

--config reads a flat key=value file whose keys are scenario field
names (relay only); flags override config, config overrides defaults.
--seedless is accepted everywhere and does nothing: every code path is
already deterministic.
"""

import argparse
import csv
import io
import math
import os
import sys
import tempfile
from typing import Dict, List, Optional, Sequence

from .ballot import log2_int, rate_figures, s_count
from .codebook import (
    BUILD_MAX_N,
    FlowViolationError,
    PathCountTable,
    build_codebook,
    rank,
    simulate_flow,
    unrank,
    validate,
)
from .concat import concat_decode, concat_encode, metrics, plan
from .relay import CROSS_TERMS, GEOMETRY_MODES, ScenarioConfig, sweep

# relay sweep defaults: the full comparison grid
DEFAULT_P_DB = "1:50:0.5"
DEFAULT_KAPPA = "0.35,0.75"
DEFAULT_A = "1.5,2"
DEFAULT_NTR = "6,12"

_SCALAR_CONFIG_KEYS = {
    "p": float,
    "d": float,
    "alpha": float,
    "b": float,
    "weight_a": float,
    "geometry": str,
    "cross_term": str,
}
_AXIS_CONFIG_KEYS = ("kappa", "a", "ntr", "p_db")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sigtime-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(
    header: Sequence[str],
    rows: Sequence[Sequence[str]],
    path: Optional[str],
    note: str = "",
) -> None:
    text = _csv_text(header, rows)
    if path:
        _write_atomic(path, text)
        line = f"wrote {len(rows)} rows to {path}"
        if note:
            line += f" ({note})"
        print(line)
    else:
        sys.stdout.write(text)


def _parse_float_list(text: str, flag: str, parser: argparse.ArgumentParser) -> List[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        parser.error(f"{flag}: expected a comma-separated list of numbers, got {text!r}")
    if not values:
        parser.error(f"{flag}: empty list")
    return values


def _parse_int_list(text: str, flag: str, parser: argparse.ArgumentParser) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        parser.error(f"{flag}: expected a comma-separated list of integers, got {text!r}")
    if not values:
        parser.error(f"{flag}: empty list")
    return values


def _parse_p_db(text: str, parser: argparse.ArgumentParser) -> List[float]:
    """Either start:stop:step (inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            parser.error(f"--p-db: range syntax is start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            parser.error(f"--p-db: non-numeric range bound in {text!r}")
        if step <= 0 or stop < start:
            parser.error("--p-db: need step > 0 and stop >= start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    return _parse_float_list(text, "--p-db", parser)


def _load_config(path: str, parser: argparse.ArgumentParser) -> Dict[str, str]:
    try:
        with open(path, "r") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        parser.error(f"--config: cannot read {path}: {exc.strerror}")
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            parser.error(f"--config: {path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SCALAR_CONFIG_KEYS and key not in _AXIS_CONFIG_KEYS:
            parser.error(f"--config: {path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


# ---------------------------------------------------------------- count


def _run_count(ns, parser) -> int:
    if ns.n_max < 1:
        parser.error("--n-max must be at least 1")
    rows = []
    for n in range(1, ns.n_max + 1):
        fig = rate_figures(n)
        rows.append([str(n), str(fig.count), _fmt(fig.bits_total), _fmt(fig.bits_per_pulse)])
    _emit(["n", "S_n", "log2_Sn", "bits_per_pulse"], rows, ns.csv)
    return 0


# ------------------------------------------------------------ codebook


def _run_codebook_build(ns, parser) -> int:
    if ns.n < 0:
        parser.error("--n must be non-negative")
    if ns.n > BUILD_MAX_N:
        parser.error(f"--n exceeds the construction bound {BUILD_MAX_N}")
    words = build_codebook(ns.n).words
    if ns.csv:
        _emit(["word"], [[w] for w in words], ns.csv)
        return 0
    text = "".join(w + "\n" for w in words)
    if ns.out:
        _write_atomic(ns.out, text)
        print(f"wrote {len(words)} words to {ns.out}")
    else:
        sys.stdout.write(text)
    return 0


def _require_word(word: str, parser) -> None:
    try:
        ok = validate(word)
    except ValueError as exc:
        parser.error(f"--word: {exc}")
    if not ok:
        parser.error(f"--word: {word!r} is not a valid schedule word")


def _run_codebook_rank(ns, parser) -> int:
    _require_word(ns.word, parser)
    table = PathCountTable.build(len(ns.word) // 2)
    index = rank(ns.word, table)
    if ns.csv:
        _emit(["index"], [[str(index)]], ns.csv)
    else:
        print(index)
    return 0


def _run_codebook_unrank(ns, parser) -> int:
    if ns.n < 0:
        parser.error("--n must be non-negative")
    table = PathCountTable.build(ns.n)
    total = table.completions(0, 0)
    if not 0 <= ns.index < total:
        parser.error(f"--index must lie in [0, {total}) for --n {ns.n}")
    word = unrank(ns.index, table)
    if ns.csv:
        _emit(["word"], [[word]], ns.csv)
    else:
        print(word)
    return 0


def _run_codebook_simulate(ns, parser) -> int:
    _require_word(ns.word, parser)
    for flag, value in (("--c1", ns.c1), ("--c2", ns.c2), ("--T", ns.T)):
        if value <= 0:
            parser.error(f"{flag} must be positive")
    trace = simulate_flow(ns.word, ns.c1, ns.c2, ns.T)
    rows = [
        [str(s.slot), s.link, _fmt(s.duration), _fmt(s.bits), _fmt(s.buffer_after)]
        for s in trace.slots
    ]
    note = (
        f"dt_in={_fmt(trace.dt_in)} dt_out={_fmt(trace.dt_out)}"
        f" delivered_bits={_fmt(trace.delivered_bits)}"
    )
    _emit(["slot", "link", "duration", "bits", "buffer_after"], rows, ns.csv, note)
    return 0


# -------------------------------------------------------------- concat


def _plan_or_usage(target_len: int, L: int, parser):
    try:
        return plan(target_len, L)
    except ValueError as exc:
        parser.error(f"--len/--L: {exc}")


def _run_concat_metrics(ns, parser) -> int:
    if ns.L < 2 or ns.L % 2:
        parser.error("--L must be a positive even length")
    if ns.len_max < 2 or ns.len_max % 2:
        parser.error("--len-max must be a positive even length")
    rows = []
    for target_len in range(2, ns.len_max + 1, 2):
        m = metrics(plan(target_len, ns.L))
        sch = m.scheme
        rows.append(
            [
                str(target_len),
                str(sch.m),
                str(sch.r),
                _fmt(m.rate_per_pulse),
                _fmt(m.rho_rate),
                _fmt(m.rho_memory),
            ]
        )
    _emit(["len", "m", "r", "rate", "rho_R", "rho_M"], rows, ns.csv)
    return 0


def _run_concat_encode(ns, parser) -> int:
    scheme = _plan_or_usage(ns.len, ns.L, parser)
    if not 0 <= ns.index < scheme.capacity:
        parser.error(f"--index must lie in [0, {scheme.capacity})")
    word = concat_encode(scheme, ns.index)
    if ns.csv:
        _emit(["word"], [[word]], ns.csv)
    else:
        print(word)
    return 0


def _run_concat_decode(ns, parser) -> int:
    scheme = _plan_or_usage(ns.len, ns.L, parser)
    try:
        index = concat_decode(scheme, ns.word)
    except ValueError as exc:
        parser.error(f"--word: {exc}")
    if ns.csv:
        _emit(["index"], [[str(index)]], ns.csv)
    else:
        print(index)
    return 0


# --------------------------------------------------------------- relay


def _run_relay_sweep(ns, parser) -> int:
    config = _load_config(ns.config, parser) if ns.config else {}

    def scalar(key: str, flag_value, default):
        if flag_value is not None:
            return flag_value
        if key in config:
            caster = _SCALAR_CONFIG_KEYS[key]
            try:
                return caster(config[key])
            except ValueError:
                parser.error(f"--config: key {key!r} is not a {caster.__name__}")
        return default

    def axis(key: str, flag_value: Optional[str], default: str) -> str:
        if flag_value is not None:
            return flag_value
        return config.get(key, default)

    d = scalar("d", ns.d, 10.0)
    alpha = scalar("alpha", ns.alpha, 2.0)
    b = scalar("b", ns.b, 1.0)
    weight_a = scalar("weight_a", ns.weight_a, None)
    geometry = scalar("geometry", ns.geometry, "direct_d")
    cross_term = scalar("cross_term", ns.cross_term, "printed")
    p_base = scalar("p", None, 1.0)

    kappas = _parse_float_list(axis("kappa", ns.kappa, DEFAULT_KAPPA), "--kappa", parser)
    a_values = _parse_float_list(axis("a", ns.a, DEFAULT_A), "--a", parser)
    ntrs = _parse_int_list(axis("ntr", ns.ntr, DEFAULT_NTR), "--ntr", parser)
    p_dbs = _parse_p_db(axis("p_db", ns.p_db, DEFAULT_P_DB), parser)

    kwargs = dict(
        p=p_base,
        d=d,
        alpha=alpha,
        b=b,
        geometry=geometry,
        cross_term=cross_term,
        kappa=kappas[0],
        a=a_values[0],
        ntr=ntrs[0],
    )
    if weight_a is not None:
        kwargs["weight_a"] = weight_a
    try:
        base = ScenarioConfig(**kwargs)
    except ValueError as exc:
        parser.error(f"scenario: {exc}")

    reports = sweep(
        base,
        p_dbs,
        kappas=kappas,
        a_values=a_values,
        ntrs=ntrs,
        gc_density=ns.gc_density,
        st_density=ns.st_density,
    )
    rows = [
        [
            _fmt(r.p_db),
            _fmt(r.snr_direct_db),
            _fmt(r.kappa),
            _fmt(r.a),
            str(r.ntr),
            _fmt(r.r_gc),
            _fmt(r.r_st_norm),
            _fmt(r.u_two_norm),
            _fmt(r.gamma),
            _fmt(r.zeta_star),
            _fmt(r.t_star),
            _fmt(r.r_star),
            _fmt(r.beta_star),
        ]
        for r in reports
    ]
    note = (
        f"d={_fmt(d)} alpha={_fmt(alpha)} b={_fmt(b)}"
        f" geometry={geometry} cross_term={cross_term}"
    )
    _emit(
        [
            "p_db",
            "snr_db",
            "kappa",
            "a",
            "ntr",
            "r_gc",
            "r_st_norm",
            "u_two_norm",
            "gamma",
            "zeta_star",
            "t_star",
            "r_star",
            "beta_star",
        ],
        rows,
        ns.csv,
        note,
    )
    return 0


# ------------------------------------------------------------ dispatch


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--csv", metavar="PATH", help="write the result table to PATH as CSV")
    sub.add_argument(
        "--config",
        metavar="PATH",
        help="flat key=value scenario file (relay keys); flags override it",
    )
    sub.add_argument(
        "--seedless",
        action="store_true",
        help="accepted for interface stability; output is always deterministic",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigtime",
        description="Schedule-word counting, codebooks and relay rate sweeps.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    count = top.add_parser("count", help="tabulate S_n and per-pulse rates")
    count.add_argument("--n-max", type=int, required=True, metavar="N",
                       help="largest half-length n (rows cover n = 1..N)")
    _add_common(count)
    count.set_defaults(handler=_run_count)

    book = top.add_parser("codebook", help="small codebooks, ranking, flow replay")
    booksub = book.add_subparsers(dest="subcommand", required=True)

    b_build = booksub.add_parser("build", help="emit every word of length 2n")
    b_build.add_argument("--n", type=int, required=True, help="half-length n")
    b_build.add_argument("--out", metavar="PATH", help="write words one per line to PATH")
    _add_common(b_build)
    b_build.set_defaults(handler=_run_codebook_build)

    b_rank = booksub.add_parser("rank", help="index of a word in canonical order")
    b_rank.add_argument("--word", required=True, help="schedule word over '1'/'0'")
    _add_common(b_rank)
    b_rank.set_defaults(handler=_run_codebook_rank)

    b_unrank = booksub.add_parser("unrank", help="word at an index in canonical order")
    b_unrank.add_argument("--n", type=int, required=True, help="half-length n")
    b_unrank.add_argument("--index", type=int, required=True, help="rank in [0, S_n)")
    _add_common(b_unrank)
    b_unrank.set_defaults(handler=_run_codebook_unrank)

    b_sim = booksub.add_parser(
        "simulate", help="replay a word against the relay buffer rule"
    )
    b_sim.add_argument("--word", required=True, help="schedule word over '1'/'0'")
    b_sim.add_argument("--c1", type=float, required=True, help="input link rate, bits/s")
    b_sim.add_argument("--c2", type=float, required=True, help="output link rate, bits/s")
    b_sim.add_argument("--T", type=float, required=True, help="window length, seconds")
    _add_common(b_sim)
    b_sim.set_defaults(handler=_run_codebook_simulate)

    concat = top.add_parser("concat", help="block-concatenated long codebooks")
    concatsub = concat.add_subparsers(dest="subcommand", required=True)

    c_metrics = concatsub.add_parser("metrics", help="rate and storage metrics per length")
    c_metrics.add_argument("--L", type=int, required=True, help="block length in slots (even)")
    c_metrics.add_argument("--len-max", type=int, required=True,
                           help="largest target length in slots (even)")
    _add_common(c_metrics)
    c_metrics.set_defaults(handler=_run_concat_metrics)

    c_enc = concatsub.add_parser("encode", help="index to concatenated word")
    c_enc.add_argument("--len", type=int, required=True, help="target length in slots (even)")
    c_enc.add_argument("--L", type=int, required=True, help="block length in slots (even)")
    c_enc.add_argument("--index", type=int, required=True, help="message index")
    _add_common(c_enc)
    c_enc.set_defaults(handler=_run_concat_encode)

    c_dec = concatsub.add_parser("decode", help="concatenated word to index")
    c_dec.add_argument("--len", type=int, required=True, help="target length in slots (even)")
    c_dec.add_argument("--L", type=int, required=True, help="block length in slots (even)")
    c_dec.add_argument("--word", required=True, help="concatenated schedule word")
    _add_common(c_dec)
    c_dec.set_defaults(handler=_run_concat_decode)

    relay = top.add_parser("relay", help="three-node network rate comparison")
    relaysub = relay.add_subparsers(dest="subcommand", required=True)

    r_sweep = relaysub.add_parser("sweep", help="rate sweep over the parameter grid")
    r_sweep.add_argument("--d", type=float, help="S-D distance (default 10)")
    r_sweep.add_argument("--kappa", help=f"relay split points, comma list (default {DEFAULT_KAPPA})")
    r_sweep.add_argument("--a", help=f"detour factors, comma list (default {DEFAULT_A})")
    r_sweep.add_argument("--ntr", help=f"time resolutions, comma list (default {DEFAULT_NTR})")
    r_sweep.add_argument("--p-db", help=f"powers in dB, start:stop:step or comma list (default {DEFAULT_P_DB})")
    r_sweep.add_argument("--alpha", type=float, help="path-loss exponent (default 2)")
    r_sweep.add_argument("--b", type=float, help="bandwidth in Hz (default 1)")
    r_sweep.add_argument("--weight-a", type=float, help="schedule bits per slot pair (default 1.9222)")
    r_sweep.add_argument("--geometry", choices=GEOMETRY_MODES,
                         help="direct-path distance rule (default direct_d)")
    r_sweep.add_argument("--cross-term", choices=CROSS_TERMS,
                         help="coherent cross-term power (default printed)")
    r_sweep.add_argument("--gc-density", type=int, default=101,
                         help="baseline grid density per axis (default 101)")
    r_sweep.add_argument("--st-density", type=int, default=1001,
                         help="power-split grid density (default 1001)")
    _add_common(r_sweep)
    r_sweep.set_defaults(handler=_run_relay_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    module = ns.command if ns.command else "cli"
    try:
        return ns.handler(ns, parser)
    except (FlowViolationError, ValueError) as exc:
        print(f"{module}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
