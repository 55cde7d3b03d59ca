"""Exact apolarity computations: Hilbert functions, annihilators and rank certificates."""

from ._apolar import *  # noqa: F401,F403
from ._apolar import __version__, CertificateError, InputError, Poly, VarTable

import json as _json


def run(*args):
    """Runs a CLI command and returns (report dict, exit code)."""
    document, code = run_cli(list(args))  # noqa: F405
    return _json.loads(document), code
