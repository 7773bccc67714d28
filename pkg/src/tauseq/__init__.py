"""tauseq: exact tau-function machinery for octahedral bilinear recurrences.

Pipeline: convex lattice polygon -> rank-2 sublattice of A_{s-1} ->
octahedral relation -> three-term bilinear integer recurrence -> sequence
-> offline OEIS match.  Two independent exact oracles back the identities:
a truncated fermionic Fock engine (tauseq.fock) and a symbolic polynomial
engine for the bilinear KP equation (tauseq.kp).
"""

__version__ = "0.1.0"
