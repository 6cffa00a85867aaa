"""Empirical sampler checks and lemma batches for the command line."""

from .empirical import friedman_check, km_bin_masses, km_check
from .lemmas import check_ell, check_m, perturbed_f, run_lemmas
