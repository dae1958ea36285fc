"""Job files for the command line.

A job is a JSON object::

    {
      "group":     {"kind": "symmetric", "degree": 3, "names": [...]}
                 | {"kind": "cyclic", "order": 6}
                 | {"kind": "table", "table": [[...], ...], "names": [...]},
      "signature": {"genus": 0, "periods": [2, 2, 3]},
      "phi":       {"A": [...], "B": [...], "Xi": [...]},
      "transversal": {"<element>": "<word>", ...},      (optional)
      "program":   "V1,V2,Bhat:1",                       (optional)
      "options":   {"variant": "corrected", "rule": "conjugation",
                    "cap": 10000, "keep": ["S[A,x7]", ...]}   (optional)
    }

Group elements may be given as indices, as element names, or (for
symmetric groups) in cycle notation such as ``"(1,2,3)"``.  ``names``
is optional and relabels the elements for all output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import JobParseError
from .groups import FiniteGroup, from_table, make_cyclic, make_symmetric
from .kernel_map import GeneratingVector
from .schreier import SchreierTransversal
from .words import OrbifoldSignature, parse_word

FIELDS = ("group", "signature", "phi", "transversal", "program", "options")
OPTIONS = ("variant", "rule", "cap", "keep")
BUNDLED = ("s3", "s3_genus1")


@dataclass(frozen=True)
class JobSpec:
    group: dict
    signature: dict
    phi: dict
    transversal: Optional[dict] = None
    program: Optional[str] = None
    options: dict = field(default_factory=dict)

    def build_group(self) -> FiniteGroup:
        spec = self.group
        kind = spec.get("kind")
        try:
            if kind == "cyclic":
                grp = make_cyclic(int(spec["order"]))
            elif kind == "symmetric":
                grp = make_symmetric(int(spec["degree"]))
            elif kind == "table":
                grp = from_table(spec["table"])
            else:
                raise JobParseError(f"group kind must be cyclic, symmetric or table, got {kind!r}")
        except KeyError as exc:
            raise JobParseError(f"group spec is missing {exc}") from None
        if "names" in spec:
            grp = grp.relabel(spec["names"])
        return grp

    def build_signature(self) -> OrbifoldSignature:
        try:
            return OrbifoldSignature(int(self.signature["genus"]),
                                     tuple(self.signature.get("periods", ())))
        except KeyError as exc:
            raise JobParseError(f"signature is missing {exc}") from None

    def build_phi(self, grp: FiniteGroup) -> GeneratingVector:
        def refs(key):
            try:
                return tuple(grp.element(x) for x in self.phi.get(key, ()))
            except (ValueError, TypeError) as exc:
                raise JobParseError(f"phi.{key}: {exc}") from None
        return GeneratingVector(refs("A"), refs("B"), refs("Xi"))

    def build_transversal(self, grp, sig, override: Optional[dict] = None):
        data = override if override is not None else self.transversal
        if data is None:
            return None
        return transversal_from_mapping(data, grp, sig)

    def resolve(self):
        """``(grp, sig, phi, transversal or None)``."""
        grp = self.build_group()
        sig = self.build_signature()
        return grp, sig, self.build_phi(grp), self.build_transversal(grp, sig)


def transversal_from_mapping(data: dict, grp: FiniteGroup, sig: OrbifoldSignature):
    try:
        rep = {grp.element(k): parse_word(str(v)) for k, v in data.items()}
    except (ValueError, TypeError) as exc:
        raise JobParseError(f"transversal: {exc}") from None
    return SchreierTransversal(sig, rep)


def parse_job(text: str) -> JobSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobParseError(f"job is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise JobParseError("job must be a JSON object")
    unknown = sorted(set(data) - set(FIELDS))
    if unknown:
        raise JobParseError(f"unknown job fields: {', '.join(unknown)}")
    for key in ("group", "signature", "phi"):
        if not isinstance(data.get(key), dict):
            raise JobParseError(f"job field {key!r} must be an object")
    options = data.get("options") or {}
    bad = sorted(set(options) - set(OPTIONS))
    if bad:
        raise JobParseError(f"unknown options: {', '.join(bad)}")
    return JobSpec(data["group"], data["signature"], data["phi"], data.get("transversal"),
                   data.get("program"), options)


def bundled_job_text(name: str) -> str:
    return resources.files("surfkernel").joinpath("data", f"{name}.json").read_text()


def load_job(ref: str) -> JobSpec:
    """Read a job from a path, or by bundled name (``s3``, ``s3_genus1``)."""
    path = Path(ref)
    if path.exists():
        return parse_job(path.read_text())
    if ref in BUNDLED:
        return parse_job(bundled_job_text(ref))
    raise JobParseError(f"no job file {ref!r} (bundled jobs: {', '.join(BUNDLED)})")
