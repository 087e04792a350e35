"""Reading and writing Berkeley PLA files.

Only the single-table subset needed here is supported: .i/.o/.p/.type/
.ilb/.ob/.e directives, '#' comments, and f or fd table types. Rows
carry one input cube and one output column string each; split_outputs
turns the table into one FunctionSpec per output, and write_pla merges
per-output covers back into shared rows so a cube used by several
outputs is emitted (and counted) once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .covers import Cover, FunctionSpec
from .cubes import Cube

__all__ = [
    "PlaParseError",
    "PlaFile",
    "parse_pla",
    "split_outputs",
    "merged_product_count",
    "write_pla",
]

_TYPES = ("f", "fd")

# Accepted plane characters, normalized before validation.
_CHAR_MAP = {"2": "-", "~": "-"}
_INPUT_CHARS = frozenset("01-")
_OUTPUT_CHARS = frozenset("01-")


class PlaParseError(ValueError):
    """Malformed PLA text; carries the 1-based source line when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True, slots=True)
class PlaFile:
    num_inputs: int
    num_outputs: int
    ptype: str = "fd"
    rows: tuple[tuple[Cube, str], ...] = ()
    input_labels: tuple[str, ...] | None = None
    output_labels: tuple[str, ...] | None = None
    declared_products: int | None = None


def _int_arg(args: list[str], directive: str, lineno: int) -> int:
    if len(args) != 1 or not args[0].isdigit():
        raise PlaParseError(f"{directive} needs one integer argument", lineno)
    return int(args[0])


def parse_pla(text: str) -> PlaFile:
    num_inputs: int | None = None
    num_outputs: int | None = None
    ptype = "fd"
    declared: int | None = None
    ilb: tuple[str, ...] | None = None
    ob: tuple[str, ...] | None = None
    rows: list[tuple[Cube, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0].startswith("."):
            directive, args = tokens[0], tokens[1:]
            if directive == ".i":
                num_inputs = _int_arg(args, ".i", lineno)
            elif directive == ".o":
                num_outputs = _int_arg(args, ".o", lineno)
            elif directive == ".p":
                declared = _int_arg(args, ".p", lineno)
            elif directive == ".type":
                if len(args) != 1 or args[0] not in _TYPES:
                    raise PlaParseError(
                        f"unsupported table type {' '.join(args) or '(none)'};"
                        f" expected one of {', '.join(_TYPES)}",
                        lineno,
                    )
                ptype = args[0]
            elif directive == ".ilb":
                ilb = tuple(args)
            elif directive == ".ob":
                ob = tuple(args)
            elif directive in (".e", ".end"):
                break
            else:
                raise PlaParseError(f"unknown directive {directive}", lineno)
            continue
        if num_inputs is None or num_outputs is None:
            raise PlaParseError("table row before .i/.o declarations", lineno)
        packed = "".join(_CHAR_MAP.get(ch, ch) for ch in "".join(tokens))
        if len(packed) != num_inputs + num_outputs:
            raise PlaParseError(
                f"row has {len(packed)} plane characters, expected"
                f" {num_inputs}+{num_outputs}",
                lineno,
            )
        in_part = packed[:num_inputs]
        out_part = packed[num_inputs:]
        if not set(in_part) <= _INPUT_CHARS:
            raise PlaParseError(f"bad input plane {in_part!r}", lineno)
        if not set(out_part) <= _OUTPUT_CHARS:
            raise PlaParseError(f"bad output plane {out_part!r}", lineno)
        rows.append((Cube.from_string(in_part), out_part))

    if num_inputs is None or num_outputs is None:
        raise PlaParseError("missing .i/.o declarations")
    if ilb is not None and len(ilb) != num_inputs:
        raise PlaParseError(f".ilb lists {len(ilb)} names for {num_inputs} inputs")
    if ob is not None and len(ob) != num_outputs:
        raise PlaParseError(f".ob lists {len(ob)} names for {num_outputs} outputs")
    return PlaFile(
        num_inputs=num_inputs,
        num_outputs=num_outputs,
        ptype=ptype,
        rows=tuple(rows),
        input_labels=ilb,
        output_labels=ob,
        declared_products=declared,
    )


def split_outputs(pla: PlaFile) -> list[FunctionSpec]:
    """One FunctionSpec per output column.

    '1' rows feed the on-set. '-' rows feed the dc-set under type fd;
    type f has no dc plane, so there '-' means the row says nothing
    about this output, same as '0'.
    """
    n = pla.num_inputs
    specs: list[FunctionSpec] = []
    for j in range(pla.num_outputs):
        on = [cube for cube, out in pla.rows if out[j] == "1"]
        dc = [cube for cube, out in pla.rows if out[j] == "-"] if pla.ptype == "fd" else []
        specs.append(FunctionSpec(n, Cover(n, tuple(on)), Cover(n, tuple(dc))))
    return specs


def merged_product_count(covers: Sequence[Cover]) -> int:
    """Number of distinct cubes across all covers; a cube shared by
    several outputs counts once, matching the .p of a merged table."""
    distinct: set[Cube] = set()
    for cover in covers:
        distinct.update(cover.cubes)
    return len(distinct)


def write_pla(
    covers: Sequence[Cover],
    *,
    input_labels: Sequence[str] | None = None,
    output_labels: Sequence[str] | None = None,
    ptype: str = "fd",
    dc_covers: Sequence[Cover | None] | None = None,
) -> str:
    """Serialize per-output on-covers (and optional dc-covers) as PLA text.

    Rows are merged: each distinct cube gets one row with a '1' (or '-')
    in every output it serves, in first-appearance order. A cube listed
    as both on and dc for the same output is a contradiction and raises
    ValueError, as does passing dc cubes with ptype 'f'.
    """
    if not covers:
        raise ValueError("write_pla needs at least one output cover")
    if ptype not in _TYPES:
        raise ValueError(f"unsupported table type {ptype!r}")
    n = covers[0].n
    if any(cover.n != n for cover in covers):
        raise ValueError("output covers disagree on input width")
    if dc_covers is not None and len(dc_covers) != len(covers):
        raise ValueError("dc_covers must align with covers by output index")

    streams: list[list[tuple[Cube, str]]] = []
    for j, cover in enumerate(covers):
        stream = [(c, "1") for c in cover.cubes]
        dc = dc_covers[j] if dc_covers is not None else None
        if dc is not None and dc.cubes:
            if ptype != "fd":
                raise ValueError("don't-care rows need table type fd")
            if dc.n != n:
                raise ValueError("dc cover disagrees on input width")
            stream.extend((c, "-") for c in dc.cubes)
        streams.append(stream)

    order: list[Cube] = []
    out_chars: dict[Cube, list[str]] = {}
    depth = max((len(s) for s in streams), default=0)
    for i in range(depth):
        for j, stream in enumerate(streams):
            if i >= len(stream):
                continue
            cube, ch = stream[i]
            if cube not in out_chars:
                out_chars[cube] = ["0"] * len(covers)
                order.append(cube)
            prev = out_chars[cube][j]
            if prev != "0" and prev != ch:
                raise ValueError(
                    f"cube {cube} is both on and don't-care for output {j}"
                )
            out_chars[cube][j] = ch

    lines = [f".i {n}", f".o {len(covers)}"]
    if input_labels is not None:
        if len(input_labels) != n:
            raise ValueError(f"need {n} input labels, got {len(input_labels)}")
        lines.append(".ilb " + " ".join(input_labels))
    if output_labels is not None:
        if len(output_labels) != len(covers):
            raise ValueError(
                f"need {len(covers)} output labels, got {len(output_labels)}"
            )
        lines.append(".ob " + " ".join(output_labels))
    if ptype != "fd":
        lines.append(f".type {ptype}")
    lines.append(f".p {len(order)}")
    for cube in order:
        lines.append(f"{cube.to_string()} {''.join(out_chars[cube])}")
    lines.append(".e")
    return "\n".join(lines) + "\n"
