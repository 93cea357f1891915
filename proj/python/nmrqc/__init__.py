"""Python front end to the nmrqc simulator core."""

import json

from ._nmrqc import NmrqcError, normalize_program
from . import _nmrqc

__all__ = [
    "NmrqcError",
    "gate_catalog",
    "run_gate",
    "run_dj",
    "compile_gate",
    "normalize_program",
    "run_cli",
]


def _system_text(system):
    return system if isinstance(system, str) else json.dumps(system)


def gate_catalog():
    return json.loads(_nmrqc.gate_catalog())


def run_gate(name, system):
    """Simulate a gate experiment; `system` is a dict or JSON text."""
    return json.loads(_nmrqc.run_gate(name, _system_text(system)))


def run_dj(bits, function, system):
    return json.loads(_nmrqc.run_dj(bits, function, _system_text(system)))


def compile_gate(name, system):
    """Pulse-program source of the gate experiment."""
    return _nmrqc.compile_gate(name, _system_text(system))


def run_cli(args):
    """Returns (exit_code, stdout, stderr)."""
    return _nmrqc.run_cli(list(args))
