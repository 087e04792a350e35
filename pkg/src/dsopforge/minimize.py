"""SOP re-minimization backends.

Every backend takes an incompletely specified function and returns a
cover P with: every cube of P inside on+dc, every on-minterm covered,
and every cube of P intersecting the on-set (no dc-only cubes). The
builtin backend is a small expand/irredundant loop; it never increases
the cube count of the normalized on-set. The identity backend just
normalizes. The external backend shells out to an espresso-style
binary that reads a PLA path argument and prints a PLA on stdout.
"""

from __future__ import annotations

import subprocess
import threading
from dataclasses import dataclass

from .covers import Cover, FunctionSpec, cover_contains_cube, normalize
from .cubes import Cube, ContractViolation

__all__ = [
    "MinimizerBackend",
    "MinimizerBackendError",
    "expand_cube",
    "irredundant",
    "build_sop",
]

_BACKEND_KINDS = ("builtin", "external", "identity")
_MAX_ROUNDS = 10

# external minimizer invocations are serialized per process
_EXTERNAL_LOCK = threading.Lock()


class MinimizerBackendError(RuntimeError):
    """The external minimizer failed to run or produced unusable output."""


@dataclass(frozen=True, slots=True)
class MinimizerBackend:
    kind: str = "builtin"
    path: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in _BACKEND_KINDS:
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "external" and not self.path:
            raise ValueError("external backend needs an executable path")
        if self.kind != "external" and self.path is not None:
            raise ValueError(f"{self.kind} backend takes no path")

    @classmethod
    def builtin(cls) -> "MinimizerBackend":
        return cls("builtin")

    @classmethod
    def identity(cls) -> "MinimizerBackend":
        return cls("identity")

    @classmethod
    def external(cls, path: str) -> "MinimizerBackend":
        return cls("external", path)

    def describe(self) -> str:
        return self.kind if self.kind != "external" else f"external:{self.path}"


def expand_cube(p: Cube, valid: Cover) -> Cube:
    """Greedily free literals of p, in ascending variable order, keeping
    each removal only while the enlarged cube stays inside `valid`.

    Requires p itself to be inside `valid`. The result contains p and is
    an implicant of `valid`, though not necessarily prime under every
    removal order.
    """
    if not cover_contains_cube(valid, p):
        raise ContractViolation("expand_cube: cube not contained in valid cover")
    mask = p.mask
    bits = p.bits
    for i in range(p.n):
        b = 1 << i
        if not mask & b:
            continue
        trial = Cube(p.n, mask & ~b, bits & ~b)
        if cover_contains_cube(valid, trial):
            mask &= ~b
            bits &= ~b
    return Cube(p.n, mask, bits)


def irredundant(cover: Cover, must_cover: Cover) -> Cover:
    """Remove cubes whose must_cover points are already covered elsewhere.

    Scans candidates in ascending size (smallest dimension first, ties
    in original order) and removes a cube when the remaining ones still
    cover its overlap with must_cover. Survivors keep their original
    relative order.
    """
    cubes = list(cover.cubes)
    alive = [True] * len(cubes)
    order = sorted(range(len(cubes)), key=lambda i: (cubes[i].dimension, i))
    for idx in order:
        c = cubes[idx]
        alive[idx] = False
        rest = Cover(cover.n, tuple(cubes[j] for j in range(len(cubes)) if alive[j]))
        removable = True
        for m in must_cover.cubes:
            x = (m.mask & c.mask) & (m.bits ^ c.bits)
            if x:
                continue
            shared = Cube(cover.n, m.mask | c.mask, m.bits | c.bits)
            if not cover_contains_cube(rest, shared):
                removable = False
                break
        if not removable:
            alive[idx] = True
    return Cover(cover.n, tuple(c for i, c in enumerate(cubes) if alive[i]))


def _builtin_sop(f: FunctionSpec) -> Cover:
    on = normalize(f.on)
    if not on.cubes:
        return on
    valid = f.care_cover()
    current = on
    for _ in range(_MAX_ROUNDS):
        expanded = Cover(f.n, tuple(expand_cube(c, valid) for c in current.cubes))
        reduced = irredundant(normalize(expanded), on)
        if len(reduced.cubes) >= len(current.cubes):
            return reduced
        current = reduced
    return current


def _write_single_output_pla(f: FunctionSpec) -> str:
    lines = [f".i {f.n}", ".o 1", ".type fd"]
    lines.append(f".p {len(f.on.cubes) + len(f.dc.cubes)}")
    for c in f.on.cubes:
        lines.append(f"{c.to_string()} 1")
    for c in f.dc.cubes:
        lines.append(f"{c.to_string()} -")
    lines.append(".e")
    return "\n".join(lines) + "\n"


def _external_sop(f: FunctionSpec, path: str) -> Cover:
    import os
    import tempfile

    from .pla import PlaParseError, parse_pla, split_outputs

    text = _write_single_output_pla(f)
    with _EXTERNAL_LOCK:
        tmp = tempfile.NamedTemporaryFile(
            "w", suffix=".pla", prefix="dsopforge-", delete=False
        )
        try:
            tmp.write(text)
            tmp.close()
            try:
                proc = subprocess.run(
                    [path, tmp.name],
                    capture_output=True,
                    text=True,
                    timeout=300,
                )
            except OSError as exc:
                raise MinimizerBackendError(
                    f"cannot run minimizer {path!r}: {exc}"
                ) from exc
            except subprocess.TimeoutExpired as exc:
                raise MinimizerBackendError(
                    f"minimizer {path!r} timed out after 300s"
                ) from exc
        finally:
            os.unlink(tmp.name)
    if proc.returncode != 0:
        raise MinimizerBackendError(
            f"minimizer {path!r} exited with {proc.returncode}: "
            f"{proc.stderr.strip()[:500]}"
        )
    try:
        pla = parse_pla(proc.stdout)
    except PlaParseError as exc:
        raise MinimizerBackendError(
            f"minimizer {path!r} produced unparseable output: {exc}"
        ) from exc
    if pla.num_inputs != f.n or pla.num_outputs != 1:
        raise MinimizerBackendError(
            f"minimizer {path!r} returned a {pla.num_inputs}-input, "
            f"{pla.num_outputs}-output PLA for a {f.n}-input single-output function"
        )
    return normalize(split_outputs(pla)[0].on)


def build_sop(f: FunctionSpec, backend: MinimizerBackend | None = None) -> Cover:
    """Re-minimize a function into an SOP cover via the chosen backend."""
    backend = backend or MinimizerBackend.builtin()
    if backend.kind == "identity":
        return normalize(f.on)
    if backend.kind == "external":
        return _external_sop(f, backend.path)  # type: ignore[arg-type]
    return _builtin_sop(f)
