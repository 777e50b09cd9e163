from .checker import check, check_ger
from .formats import dumps_ger, dumps_proof, format_step, parse_ger, parse_proof, read_ger, read_proof
from .model import (
    AddBC,
    AddRAT,
    AddSBC,
    CheckReport,
    GerCertificate,
    Proof,
    ProofStep,
    Resolve,
    System,
    Weaken,
    ger_extension_size,
    proof_size,
)
from .transform import normalize_sbc_front, remap_step, restrict_proof

__all__ = [
    "AddBC",
    "AddRAT",
    "AddSBC",
    "CheckReport",
    "GerCertificate",
    "Proof",
    "ProofStep",
    "Resolve",
    "System",
    "Weaken",
    "check",
    "check_ger",
    "dumps_ger",
    "dumps_proof",
    "format_step",
    "ger_extension_size",
    "normalize_sbc_front",
    "parse_ger",
    "parse_proof",
    "proof_size",
    "read_ger",
    "read_proof",
    "remap_step",
    "restrict_proof",
]
