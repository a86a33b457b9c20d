"""
Seeded k-fold partitioning.

A plan is a pure function of (n, k, run_index, master_seed): the indices are
shuffled with a generator seeded from hash64(master_seed, run_index) and dealt
round-robin, so fold sizes differ by at most one.
"""

import hashlib
from typing import Iterator, Tuple

import numpy as np

from ..exceptions import DegenerateInputError
from ..models import FoldPlan


def hash64(*parts) -> int:
    """Stable 64-bit digest of the parts' string forms."""
    digest = hashlib.blake2b("\x1f".join(str(p) for p in parts).encode("utf-8"), digest_size=8)
    return int.from_bytes(digest.digest(), "big")


def make_fold_plan(n: int, k: int, run_index: int, master_seed: int) -> FoldPlan:
    """
    Assign n stimuli to k folds for one run.

    Raises:
        DegenerateInputError: k < 2 or n < k
    """
    if k < 2:
        raise DegenerateInputError(f"Need at least 2 folds, got k={k}")
    if n < k:
        raise DegenerateInputError(f"Cannot split {n} stimuli into {k} folds")
    seed = hash64(master_seed, run_index)
    order = np.random.default_rng(seed).permutation(n)
    assignment = np.empty(n, dtype=np.int64)
    assignment[order] = np.arange(n) % k
    return FoldPlan(run_index=run_index, seed=seed, assignment=tuple(assignment.tolist()), k=k)


def iter_folds(plan: FoldPlan) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Yield (fold, train_indices, test_indices) for every fold of a plan.

    Raises:
        AssertionError: if a training and test set ever share an index
    """
    for fold in range(plan.k):
        train = plan.train_indices(fold)
        test = plan.test_indices(fold)
        if np.intersect1d(train, test).size or train.size + test.size != plan.n:
            raise AssertionError(f"Fold {fold} of run {plan.run_index} leaks test stimuli into training")
        yield fold, train, test
