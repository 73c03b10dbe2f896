"""Positivity certificates: ordered products of conjugated right-handed twists."""

from __future__ import annotations

import dataclasses
import json
from typing import Any

from .braid import (
    GENERATORS,
    IDENTITY,
    BraidWord,
    conjugate,
    equals,
    exp_sum,
    is_conjugate,
    parse_word,
    render_word,
)

FORMAT = "torus-positivity-certificate/1"


@dataclasses.dataclass(frozen=True)
class Factor:
    """The twist conjugator^-1 * generator * conjugator."""

    conjugator: BraidWord
    generator: str

    def word(self) -> BraidWord:
        return conjugate(BraidWord.gen(self.generator), self.conjugator)

    def then(self, g: BraidWord) -> "Factor":
        """The same twist seen after conjugating everything by g."""
        return Factor(self.conjugator * g, self.generator)


@dataclasses.dataclass(frozen=True)
class PositivityCertificate:
    target: BraidWord
    factors: tuple[Factor, ...]
    metadata: dict[str, Any] = dataclasses.field(default_factory=dict, hash=False)

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> BraidWord:
        out = IDENTITY
        for f in self.factors:
            out = out * f.word()
        return out

    def conjugated(self, g: BraidWord, **metadata) -> "PositivityCertificate":
        """Certificate for g^-1 * target * g."""
        return PositivityCertificate(
            conjugate(self.target, g),
            tuple(f.then(g) for f in self.factors),
            {**self.metadata, **metadata},
        )


def certificate(target: BraidWord, factors, **metadata) -> PositivityCertificate:
    """Build a certificate from ``(conjugator, generator)`` pairs."""
    return PositivityCertificate(target, tuple(Factor(c, g) for c, g in factors), metadata)


@dataclasses.dataclass(frozen=True)
class Failure:
    index: int | None  # 1-based factor index, None for whole-certificate problems
    message: str


def check_certificate(cert: PositivityCertificate, locate: bool = True) -> list[Failure]:
    """Return every problem found; an empty list means the certificate verifies.

    Only braid-engine equality is used.  When the product is wrong and
    ``locate`` is set, the failure is attributed to the first factor whose
    replacement by some single twist would repair the product.
    """
    failures = [
        Failure(i, f"generator {f.generator!r} is not x or y")
        for i, f in enumerate(cert.factors, 1)
        if f.generator not in GENERATORS
    ]
    if failures:
        return failures
    if exp_sum(cert.target) != len(cert.factors):
        failures.append(Failure(None, f"target has exponent sum {exp_sum(cert.target)} but there are {len(cert.factors)} twists"))
    if equals(cert.product(), cert.target):
        return failures
    index = _repair_position(cert) if locate else None
    failures.append(Failure(index, "product of twists differs from target"))
    return failures


def verify_certificate(cert: PositivityCertificate) -> bool:
    return not check_certificate(cert, locate=False)


def _repair_position(cert: PositivityCertificate) -> int | None:
    words = [f.word() for f in cert.factors]
    prefix = IDENTITY
    for j in range(len(words)):
        suffix = IDENTITY
        for w in words[j + 1:]:
            suffix = suffix * w
        needed = ~prefix * cert.target * ~suffix
        if exp_sum(needed) == 1 and any(is_conjugate(BraidWord.gen(g), needed) is not None for g in GENERATORS):
            return j + 1
        prefix = prefix * words[j]
    return None


# -- serialization -------------------------------------------------------------

def to_text(cert: PositivityCertificate) -> str:
    doc = {
        "format": FORMAT,
        "target": render_word(cert.target),
        "factors": [{"conjugator": render_word(f.conjugator), "generator": f.generator} for f in cert.factors],
        "metadata": cert.metadata,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_text(text: str) -> PositivityCertificate:
    """Parse the JSON produced by :func:`to_text`; raises ValueError on malformed input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"certificate is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ValueError(f"not a {FORMAT} document")
    try:
        factors = tuple(Factor(parse_word(f["conjugator"]), f["generator"]) for f in doc["factors"])
        return PositivityCertificate(parse_word(doc["target"]), factors, dict(doc.get("metadata", {})))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed certificate: {exc!r}") from exc
