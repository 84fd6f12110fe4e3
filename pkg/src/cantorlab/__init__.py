"""Exact-arithmetic toolkit for partition polynomials and clopen measures.

The package is organised mirroring its mathematical layers:

- :mod:`cantorlab.intpoly` — integer polynomials, the arithmetic bedrock;
- :mod:`cantorlab.partition` — partition forms, depth, domination, composition;
- :mod:`cantorlab.clopen` — finite clopen sets of binary words and their measures;
- :mod:`cantorlab.algnum` — Eisenstein certificates, root isolation, reciprocal
  equations for ``(1-t)/t``;
- :mod:`cantorlab.certify` — the end-to-end counterexample certificate pipeline;
- :mod:`cantorlab.cli` — the ``cantorlab`` command.
"""

from .intpoly import IntPoly, Rational
from .partition import PartitionForm
from .clopen import ClopenSet
from .algnum import EisensteinWitness, RationalInterval
from .certify import Certificate

__all__ = [
    "IntPoly",
    "Rational",
    "PartitionForm",
    "ClopenSet",
    "EisensteinWitness",
    "RationalInterval",
    "Certificate",
]
