"""Window features for the coding and promoter tasks, all scaled into [0,1].

Coding windows get 9 features: per-base codon-phase asymmetry and
composition, plus the period-3 spectral power that coding sequence shows at
the one-third frequency.  Promoter windows get 4: GC content, normalized
CpG observed/expected, and consensus matches against a TATA-box and a short
initiator motif.  Everything lands in [0,1] because the classifier's
quantizer is only defined there; the normalizations that arrange that are
documented inline.  'N' residues never match anything but still count
toward lengths.
"""

from __future__ import annotations

from dataclasses import dataclass

CODING_SCHEMA = (
    "asym_A",
    "asym_C",
    "asym_G",
    "asym_T",
    "comp_A",
    "comp_C",
    "comp_G",
    "comp_T",
    "period3_power",
)

PROMOTER_SCHEMA = ("gc_content", "cpg_ratio", "tata_score", "inr_score")

TATA_MOTIF = "TATAAA"
INR_MOTIF = "CCAT"

#: minimum window length per task (period-3 needs 3, TATA motif needs 6)
CODING_MIN_LEN = 3
PROMOTER_MIN_LEN = len(TATA_MOTIF)


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]
    schema: tuple[str, ...]

    def __post_init__(self):
        if len(self.values) != len(self.schema):
            raise ValueError("feature count does not match schema length")
        for name, x in zip(self.schema, self.values):
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"feature {name}={x} outside [0, 1]")


def composition(seq: str, base: str) -> float:
    """count(base)/length; N counts in the length, never as a match."""
    if not seq:
        raise ValueError("empty sequence")
    return seq.count(base) / len(seq)


def _phase_counts(seq: str, base: str) -> tuple[int, int, int]:
    c = [0, 0, 0]
    for j, ch in enumerate(seq):
        if ch == base:
            c[j % 3] += 1
    return c[0], c[1], c[2]


def position_asymmetry(seq: str, base: str) -> float:
    """(max-min)/(max+min+1) over the three codon-phase counts of base.

    The +1 keeps the value strictly below 1 and defined for absent bases.
    """
    if len(seq) < 3:
        raise ValueError("position asymmetry needs length >= 3")
    counts = _phase_counts(seq, base)
    hi, lo = max(counts), min(counts)
    return (hi - lo) / (hi + lo + 1)


def period3_power(seq: str) -> float:
    """Spectral power of the sequence at period 3, clamped to [0,1].

    For each base the indicator signal's DFT magnitude at frequency 1/3 is
    |c0 + c1*w + c2*w^2|^2 with w = exp(-2*pi*i/3) and ck the phase counts,
    which reduces to the exact integer form

        c0^2 + c1^2 + c2^2 - c0*c1 - c1*c2 - c0*c2.

    The per-base powers are summed and scaled by 3/L^2, which maps a pure
    3-periodic sequence to exactly 1.0.
    """
    length = len(seq)
    if length < 3:
        raise ValueError("period-3 power needs length >= 3")
    total = 0
    for base in "ACGT":
        c0, c1, c2 = _phase_counts(seq, base)
        total += c0 * c0 + c1 * c1 + c2 * c2 - c0 * c1 - c1 * c2 - c0 * c2
    return min(1.0, 3 * total / length**2)


def cpg_ratio(seq: str) -> float:
    """Observed/expected CG dinucleotides, halved and clamped into [0,1].

    expected = count(C)*count(G)/L; a zero expectation yields 0.0.
    """
    if len(seq) < 2:
        raise ValueError("CpG ratio needs length >= 2")
    obs = sum(1 for i in range(len(seq) - 1) if seq[i] == "C" and seq[i + 1] == "G")
    exp = seq.count("C") * seq.count("G") / len(seq)
    if exp == 0:
        return 0.0
    return min(1.0, (obs / exp) / 2)


def consensus_score(seq: str, motif: str) -> float:
    """Best ungapped alignment score: matching positions / motif length."""
    if len(seq) < len(motif):
        raise ValueError(f"window shorter than motif ({len(seq)} < {len(motif)})")
    m = len(motif)
    best = 0
    for i in range(len(seq) - m + 1):
        hits = sum(1 for k in range(m) if seq[i + k] == motif[k])
        if hits > best:
            best = hits
            if best == m:
                break
    return best / m


def coding_features(seq: str) -> FeatureVector:
    if len(seq) < CODING_MIN_LEN:
        raise ValueError(f"coding features need length >= {CODING_MIN_LEN}")
    values = tuple(position_asymmetry(seq, b) for b in "ACGT") + tuple(
        composition(seq, b) for b in "ACGT"
    ) + (period3_power(seq),)
    return FeatureVector(values=values, schema=CODING_SCHEMA)


def promoter_features(seq: str) -> FeatureVector:
    if len(seq) < PROMOTER_MIN_LEN:
        raise ValueError(f"promoter features need length >= {PROMOTER_MIN_LEN}")
    gc = composition(seq, "C") + composition(seq, "G")
    values = (
        gc,
        cpg_ratio(seq),
        consensus_score(seq, TATA_MOTIF),
        consensus_score(seq, INR_MOTIF),
    )
    return FeatureVector(values=values, schema=PROMOTER_SCHEMA)
