"""Command-line front end.

::

    pronyiir design-time  SAMPLES.csv --order-num M --order-den N [--mode interp|ls]
    pronyiir design-freq  SPEC.csv|SPEC.json --order-num M --order-den N [--group-delay TAU]
    pronyiir design-zeros SAMPLES.csv --order-num M --denominator "1,-0.9,0.2"
    pronyiir identify     SAMPLES.csv --order-den N [--period T]
    pronyiir eval         FILTER.json --grid n

Exit status is 0 on success, 2 for unusable input and 3 when the design
itself fails (for instance a singular interpolation system).  Failures are
reported as a JSON document with an ``error`` field.
"""

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegenerateModeError,
    EvaluationError,
    InvalidInputError,
    NoSolutionError,
    PronyError,
)
from .freq_design import (
    FrequencySpec,
    band_magnitudes,
    design_freq,
    frequency_response,
    grid,
    linear_phase_samples,
)
from .ident import SampledSignal, identify
from .time_design import (
    Mode,
    RationalFilter,
    TimeDesignProblem,
    design_time,
    impulse_response,
    pole_diagnostics,
)
from .zeros import ZeroDesignProblem, design_zeros

SCHEMA = 1
COMMANDS = ("design-time", "design-freq", "design-zeros", "identify", "eval")
IMAG_CLEAN_TOL = 1e-10

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DESIGN = 3


class InputFormatError(InvalidInputError):
    """An input file could not be parsed."""


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    M: Optional[int] = None
    N: Optional[int] = None
    mode: str = "interp"
    group_delay: Optional[float] = None
    eval_grid: int = 512
    format: str = "json"
    denominator: Optional[str] = None
    period: float = 1.0
    complex_design: bool = False


# -- serialization -----------------------------------------------------------

def _num(x):
    x = float(x)
    if not math.isfinite(x):
        return None
    if x == 0.0:
        return 0.0
    return x


def _fmt(x):
    x = _num(x)
    return "null" if x is None else format(x, ".17g")


def _complex(z):
    z = complex(z)
    im = 0.0 if abs(z.imag) < IMAG_CLEAN_TOL else z.imag
    return {"re": _num(z.real), "im": _num(im)}


def _dump(obj, indent=0):
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, dict) and len(v) <= 3 for v in obj):
            items = [f"{pad}{_dump_inline(v)}" for v in obj]
        else:
            items = [f"{pad}{_dump(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _dump_inline(obj)


def _dump_inline(obj):
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump_inline(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump_inline(v) for v in obj) + "]"
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    return json.dumps(str(obj))


def dumps(doc):
    """Serialize `doc` as JSON with every float at 17 significant digits."""
    return _dump(doc) + "\n"


# -- parsing -----------------------------------------------------------------

def _parse_float(text, line, column):
    try:
        return float(text)
    except ValueError:
        raise InputFormatError(f"line {line}, field {column!r}: not a number: {text!r}") from None


def parse_samples_csv(text):
    """Parse ``n,value`` / ``k,re,im`` / ``k,magnitude`` CSV.

    Returns ``(kind, values)`` where kind is ``'value'``, ``'complex'`` or
    ``'magnitude'``.
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(i + 1, r) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not rows:
        raise InputFormatError("input is empty")
    line, header = rows[0]
    header = [h.strip().lower() for h in header]
    if len(header) == 2 and header[0] in ("n", "k") and header[1] in ("value", "magnitude"):
        kind = header[1]
    elif len(header) == 3 and header[0] in ("n", "k") and header[1:] == ["re", "im"]:
        kind = "complex"
    else:
        raise InputFormatError(
            f"line {line}: header must be 'n,value', 'k,re,im' or 'k,magnitude', got {','.join(header)!r}")

    values = []
    for expected, (line, row) in enumerate(rows[1:]):
        if len(row) != len(header):
            raise InputFormatError(f"line {line}: expected {len(header)} fields, got {len(row)}")
        idx = row[0].strip()
        try:
            idx_val = int(idx)
        except ValueError:
            raise InputFormatError(f"line {line}, field {header[0]!r}: not an integer: {idx!r}") from None
        if idx_val != expected:
            raise InputFormatError(f"line {line}, field {header[0]!r}: expected index {expected}, got {idx_val}")
        if kind == "complex":
            values.append(complex(_parse_float(row[1].strip(), line, "re"),
                                  _parse_float(row[2].strip(), line, "im")))
        else:
            values.append(_parse_float(row[1].strip(), line, header[1]))
    if not values:
        raise InputFormatError("input has a header but no samples")
    return kind, np.asarray(values)


def _parse_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"line {exc.lineno}, column {exc.colno}: invalid JSON: {exc.msg}") from None


def _read_complex(obj, where):
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, dict) and "re" in obj:
        re_, im_ = obj.get("re"), obj.get("im", 0.0)
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re_, im_)):
            return complex(re_, im_)
    raise InputFormatError(f"{where}: expected a number or a {{\"re\", \"im\"}} object")


def parse_filter_json(text):
    doc = _parse_json(text)
    filt = doc.get("filter", doc) if isinstance(doc, dict) else None
    if not isinstance(filt, dict) or "b" not in filt or "a" not in filt:
        raise InputFormatError("filter document needs 'b' and 'a' (optionally under 'filter')")
    coeffs = {}
    for name in ("b", "a"):
        seq = filt[name]
        if not isinstance(seq, list) or not seq:
            raise InputFormatError(f"field {name!r}: expected a non-empty list")
        coeffs[name] = [_read_complex(v, f"field {name!r}[{i}]") for i, v in enumerate(seq)]
    return RationalFilter.normalized(coeffs["b"], coeffs["a"])


def parse_band_json(text):
    """``{"length": n, "bands": [{"lo":, "hi":, "magnitude":}, ...]}`` -> magnitudes."""
    doc = _parse_json(text)
    if not isinstance(doc, dict):
        raise InputFormatError("frequency specification must be a JSON object")
    n = doc.get("length")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputFormatError("field 'length': expected a positive integer")
    bands = doc.get("bands")
    if not isinstance(bands, list) or not bands:
        raise InputFormatError("field 'bands': expected a non-empty list")
    parsed = []
    for i, band in enumerate(bands):
        try:
            parsed.append((float(band["lo"]), float(band["hi"]), float(band["magnitude"])))
        except (KeyError, TypeError, ValueError):
            raise InputFormatError(f"field 'bands'[{i}]: needs numeric 'lo', 'hi', 'magnitude'") from None
    return band_magnitudes(n, parsed)


def parse_coefficients(text):
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise InputFormatError("--denominator: no coefficients given")
    out = []
    for i, p in enumerate(parts):
        try:
            out.append(complex(p.strip().replace("i", "j")))
        except ValueError:
            raise InputFormatError(f"--denominator: coefficient {i} is not a number: {p.strip()!r}") from None
    return out


# -- commands ----------------------------------------------------------------

def _require_orders(cfg, need_m=True, need_n=True):
    if need_m and cfg.M is None:
        raise InvalidInputError("--order-num is required")
    if need_n and cfg.N is None:
        raise InvalidInputError("--order-den is required")
    for name, v in (("--order-num", cfg.M), ("--order-den", cfg.N)):
        if v is not None and v < 0:
            raise InvalidInputError(f"{name} must be nonnegative, got {v}")


def _time_samples(text):
    kind, values = parse_samples_csv(text)
    if kind == "magnitude":
        raise InputFormatError("line 1: time samples need a 'n,value' or 'n,re,im' header")
    return values


def _filter_doc(f):
    return {"b": [_complex(v) for v in f.b], "a": [_complex(v) for v in f.a]}


def _poles_doc(poles):
    return [dict(_complex(p), modulus=_num(abs(p))) for p in poles]


def _design_time(cfg, text):
    _require_orders(cfg)
    h = _time_samples(text)
    p = TimeDesignProblem(h, cfg.M, cfg.N)
    f, rep = design_time(p, cfg.mode)
    sol = h - impulse_response(f, h.size)
    doc = {
        "filter": _filter_doc(f),
        "report": {
            "equation_error_norm": _num(rep.equation_error_norm),
            "solution_error_norm": _num(np.linalg.norm(sol)),
            "equation_error": [_complex(v) for v in rep.equation_error],
            "poles": _poles_doc(rep.poles),
            "stable": rep.stable,
            "condition_estimate": _num(rep.condition_estimate),
            "rank": rep.rank,
        },
    }
    return f, rep.pole_moduli, doc


def _design_freq(cfg, text):
    _require_orders(cfg)
    extra = {}
    if text.lstrip().startswith("{"):
        mags = parse_band_json(text)
        kind = "magnitude"
    else:
        kind, values = parse_samples_csv(text)
        if kind == "value":
            raise InputFormatError("line 1: frequency samples need a 'k,re,im' or 'k,magnitude' header")
        mags = values
    if kind == "magnitude":
        tau = cfg.group_delay if cfg.group_delay is not None else (cfg.M + cfg.N) / 2
        samples = linear_phase_samples(np.asarray(mags, dtype=float), tau)
        extra["group_delay"] = _num(tau)
    else:
        samples = mags
    spec = FrequencySpec(samples, cfg.M, cfg.N, enforce_real=not cfg.complex_design)
    f, rep = design_freq(spec, cfg.mode)
    doc = {
        "samples": spec.L + 1,
        **extra,
        "filter": _filter_doc(f),
        "report": {
            "equation_error_norm": _num(rep.equation_error_norm),
            "solution_error_norm": _num(rep.response_error_norm),
            "equation_error": [_complex(v) for v in rep.equation_error_time],
            "poles": _poles_doc(rep.poles),
            "stable": rep.stable,
            "condition_estimate": _num(rep.condition_estimate),
            "rank": rep.rank,
        },
    }
    return f, rep.pole_moduli, doc


def _design_zeros(cfg, text):
    _require_orders(cfg, need_n=False)
    if cfg.denominator is None:
        raise InvalidInputError("--denominator is required")
    a = parse_coefficients(cfg.denominator)
    if a[0] == 0:
        raise InvalidInputError("--denominator: leading coefficient must be nonzero")
    a = np.asarray(a) / a[0]
    h = _time_samples(text)
    f, rep = design_zeros(ZeroDesignProblem(a, h, cfg.M))
    poles, moduli, stable = pole_diagnostics(f.a)
    doc = {
        "filter": _filter_doc(f),
        "report": {
            "equation_error_norm": _num(rep.equation_error_norm),
            "solution_error_norm": _num(rep.solution_error_norm),
            "poles": _poles_doc(poles),
            "stable": stable,
            "rank": rep.rank,
        },
    }
    return f, moduli, doc


def _identify(cfg, text):
    _require_orders(cfg, need_m=False)
    y = _time_samples(text)
    model = identify(SampledSignal(y, cfg.period), cfg.N)
    doc = {
        "period": _num(cfg.period),
        "modes": [
            {"K": _complex(K), "alpha": _complex(al), "lambda": _complex(lam)}
            for K, al, lam in zip(model.amplitudes, model.exponents, model.poles)
        ],
        "report": {"residual_norm": _num(model.residual_norm)},
    }
    return model, doc


def _eval(cfg, text):
    if cfg.eval_grid < 2:
        raise InvalidInputError(f"--grid must be at least 2, got {cfg.eval_grid}")
    f = parse_filter_json(text)
    w = grid(cfg.eval_grid)
    H = frequency_response(f, w)
    points = [
        {"k": k, "omega": _num(wk), **_complex(hk), "magnitude": _num(abs(hk)), "phase": _num(np.angle(hk))}
        for k, (wk, hk) in enumerate(zip(w, H))
    ]
    return f, {"filter": _filter_doc(f), "grid": points}


# -- csv output --------------------------------------------------------------

def _csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in rows:
        writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _clean(z):
    z = complex(z)
    return z.real, (0.0 if abs(z.imag) < IMAG_CLEAN_TOL else z.imag)


def _filter_csv(f):
    rows = [("coef", "index", "re", "im")]
    for name, c in (("b", f.b), ("a", f.a)):
        rows += [(name, i, *_clean(v)) for i, v in enumerate(c)]
    return _csv(rows)


def _modes_csv(model):
    rows = [("k", "K_re", "K_im", "alpha_re", "alpha_im")]
    for i, (K, al) in enumerate(zip(model.amplitudes, model.exponents)):
        rows.append((i, *_clean(K), *_clean(al)))
    return _csv(rows)


def _grid_csv(doc):
    rows = [("k", "omega", "re", "im", "magnitude", "phase")]
    for p in doc["grid"]:
        rows.append((p["k"], *(float("nan") if p[c] is None else p[c]
                               for c in ("omega", "re", "im", "magnitude", "phase"))))
    return _csv(rows)


# -- driver ------------------------------------------------------------------

def _error_doc(cfg, kind, exc):
    err = {"kind": kind, "message": str(exc)}
    if isinstance(exc, NoSolutionError):
        err["rank"] = exc.rank
        err["condition_estimate"] = _num(exc.condition_estimate) if exc.condition_estimate is not None else None
    return dumps({"schema": SCHEMA, "command": cfg.command, "error": err})


def run(config, data, diag=None):
    """Execute one command on the raw input bytes.

    Returns ``(output_bytes, exit_status)``.  Warnings (rank deficiency,
    instability) go to `diag` (default ``sys.stderr``) and do not change the
    exit status.
    """
    diag = sys.stderr if diag is None else diag
    cfg = config
    try:
        if cfg.command not in COMMANDS:
            raise InvalidInputError(f"unknown command {cfg.command!r}")
        if cfg.format not in ("json", "csv"):
            raise InvalidInputError(f"unknown format {cfg.format!r}")
        Mode.coerce(cfg.mode)
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputFormatError(f"input is not valid UTF-8 (byte {exc.start})") from None

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            moduli = None
            if cfg.command == "identify":
                model, doc = _identify(cfg, text)
                csv_out = _modes_csv(model) if cfg.format == "csv" else None
            elif cfg.command == "eval":
                _, doc = _eval(cfg, text)
                csv_out = _grid_csv(doc) if cfg.format == "csv" else None
            else:
                handler = {"design-time": _design_time, "design-freq": _design_freq,
                           "design-zeros": _design_zeros}[cfg.command]
                f, moduli, doc = handler(cfg, text)
                if cfg.command != "design-zeros":
                    doc = {"mode": Mode.coerce(cfg.mode).value, **doc}
                doc = {"orders": {"M": cfg.M, "N": cfg.N if cfg.N is not None else f.N}, **doc}
                csv_out = _filter_csv(f) if cfg.format == "csv" else None
        for w in caught:
            print(f"warning: {w.message}", file=diag)
        if moduli is not None and moduli.size and np.max(moduli) >= 1.0:
            print(f"warning: designed filter is unstable (largest pole modulus {np.max(moduli):.6g})",
                  file=diag)
    except (NoSolutionError, DegenerateModeError, EvaluationError) as exc:
        kind = {NoSolutionError: "no-solution", DegenerateModeError: "degenerate-mode",
                EvaluationError: "evaluation"}[type(exc)]
        print(f"error: {exc}", file=diag)
        return _error_doc(cfg, kind, exc).encode("utf-8"), EXIT_DESIGN
    except InvalidInputError as exc:
        print(f"error: {exc}", file=diag)
        return _error_doc(cfg, "invalid-input", exc).encode("utf-8"), EXIT_INPUT
    except PronyError as exc:
        print(f"error: {exc}", file=diag)
        return _error_doc(cfg, "design-failure", exc).encode("utf-8"), EXIT_DESIGN

    if csv_out is not None:
        return csv_out.encode("utf-8"), EXIT_OK
    return dumps({"schema": SCHEMA, "command": cfg.command, **doc}).encode("utf-8"), EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pronyiir",
        description="Prony / Pade IIR filter design and exponential parameter identification.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="input file ('-' for stdin)")
    parser.add_argument("--order-num", "-M", type=int, dest="M", help="numerator degree M")
    parser.add_argument("--order-den", "-N", type=int, dest="N",
                        help="denominator degree N (number of modes for identify)")
    parser.add_argument("--mode", choices=("interp", "ls"), default="interp")
    parser.add_argument("--group-delay", type=float, default=None,
                        help="linear-phase delay in samples for magnitude-only specs "
                             "(default (M+N)/2)")
    parser.add_argument("--grid", type=int, default=512, dest="eval_grid",
                        help="number of DFT-grid frequencies for eval")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    parser.add_argument("--denominator", default=None,
                        help="comma-separated fixed denominator for design-zeros")
    parser.add_argument("--period", type=float, default=1.0, help="sample period T for identify")
    parser.add_argument("--complex", action="store_true", dest="complex_design",
                        help="allow samples without conjugate symmetry (complex coefficients)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command, input_path=args.input, output_path=args.output,
        M=args.M, N=args.N, mode=args.mode, group_delay=args.group_delay,
        eval_grid=args.eval_grid, format=args.format, denominator=args.denominator,
        period=args.period, complex_design=args.complex_design,
    )
    try:
        if cfg.input_path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(cfg.input_path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        out, status = _error_doc(cfg, "invalid-input", f"cannot read {cfg.input_path}: {exc.strerror}"
                                 ).encode("utf-8"), EXIT_INPUT
        print(f"error: cannot read {cfg.input_path}: {exc.strerror}", file=sys.stderr)
    else:
        out, status = run(cfg, data)

    if cfg.output_path:
        with open(cfg.output_path, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
