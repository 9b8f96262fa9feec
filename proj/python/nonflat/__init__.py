"""Exact Hopf algebra computations and non-flatness certificates.

Hopf algebras, modules and operators are plain dicts in the same JSON layout
the command-line tool reads and writes.
"""

import json

from . import _core
from ._core import NonflatError, JsonError

__all__ = [
    "NonflatError", "JsonError", "build_group", "build_cyclic", "build_sweedler", "build_taft", "dual",
    "verify", "is_semisimple", "content_hash", "coend", "is_projective", "is_free", "halfdual",
    "lemma_operator", "slice_algebra", "certify", "recheck",
]


def _enc(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def build_group(table, field="Q"):
    return json.loads(_core.build_group(table, field))


def build_cyclic(n, field="Q"):
    return build_group(_core.cyclic_table(n), field)


def build_sweedler(field="Q"):
    return json.loads(_core.build_sweedler(field))


def build_taft(n, field):
    return json.loads(_core.build_taft(n, field))


def dual(hopf):
    return json.loads(_core.dual(_enc(hopf)))


def verify(hopf):
    """Axiom report: {"all_pass", "checks": [{"axiom", "pass", "witness"}]}."""
    return json.loads(_core.verify(_enc(hopf)))


def is_semisimple(hopf):
    return _core.is_semisimple(_enc(hopf))


def content_hash(hopf):
    return _core.content_hash(_enc(hopf))


def coend(hopf, module="regular+trivial:1"):
    return json.loads(_core.coend(_enc(hopf), module))


def is_projective(hopf, module="regular+trivial:1", side="left", of_coend=False):
    return json.loads(_core.projectivity(_enc(hopf), module, side, of_coend))


def is_free(hopf, module="regular+trivial:1", side="left", of_coend=False, seed=1):
    return json.loads(_core.freeness(_enc(hopf), module, side, of_coend, seed))


def halfdual(endo, field):
    return json.loads(_core.halfdual(_enc(endo), field))


def lemma_operator(hopf):
    return json.loads(_core.lemma_operator(_enc(hopf)))


def slice_algebra(endo, field, budget=_core.default_slice_budget):
    return json.loads(_core.slice_algebra(_enc(endo), field, budget))


def certify(hopf, kind="nonflat", v1=1, depth=5, truncation=8, seed=7, retries=50, bound=3,
            slice_budget=_core.default_slice_budget):
    """Returns (certificate text, verdict, reason); the text is what recheck expects."""
    return _core.certify(_enc(hopf), kind, v1, depth, truncation, seed, retries, bound, slice_budget)


def recheck(certificate_text, hopf):
    """Returns (status, field, message) with status 0 match, 1 mismatch, 2 unreadable."""
    return _core.recheck(certificate_text, _enc(hopf))
