"""Greene-Kleitman symmetric chain decomposition of Q_n by bracket matching."""
from __future__ import annotations

from dataclasses import dataclass

from .lattice import binom

SCD_LIMIT = 20


def unmatched(mask: int, n: int) -> tuple[list[int], list[int]]:
    """Unmatched positions of the bracket word of ``mask``.

    Position i (0-based) reads ')' when element i + 1 is present and '(' when
    it is absent.  Returns (unmatched closes, unmatched opens); every unmatched
    close lies left of every unmatched open.
    """
    stack: list[int] = []
    closes: list[int] = []
    for i in range(n):
        if mask >> i & 1:
            if stack:
                stack.pop()
            else:
                closes.append(i)
        else:
            stack.append(i)
    return closes, stack


def successor(mask: int, n: int) -> int | None:
    """Next set on the chain of ``mask``: add the leftmost unmatched open position."""
    _, opens = unmatched(mask, n)
    return mask | 1 << opens[0] if opens else None


@dataclass(frozen=True)
class SymChainDecomp:
    n: int
    chains: tuple[tuple[int, ...], ...]

    def chain_index(self) -> dict[int, int]:
        return {x: i for i, c in enumerate(self.chains) for x in c}


def scd_decompose(n: int) -> SymChainDecomp:
    if not 0 <= n <= SCD_LIMIT:
        raise ValueError(f"n must be in [0, {SCD_LIMIT}]")
    chains = []
    for start in range(1 << n):
        if unmatched(start, n)[0]:
            continue
        chain = [start]
        nxt = successor(start, n)
        while nxt is not None:
            chain.append(nxt)
            nxt = successor(nxt, n)
        chains.append(tuple(chain))
    chains.sort(key=lambda c: (c[0].bit_count(), c[0]))
    return SymChainDecomp(n, tuple(chains))


def check_decomposition(d: SymChainDecomp) -> list[str]:
    """Problems with ``d`` as a symmetric chain decomposition; empty when valid."""
    n = d.n
    problems = []
    seen: set[int] = set()
    for c in d.chains:
        for x in c:
            if x in seen:
                problems.append(f"subset {x:#x} appears twice")
            seen.add(x)
        for x, y in zip(c, c[1:]):
            if x & y != x or y.bit_count() != x.bit_count() + 1:
                problems.append(f"chain {c} is not saturated")
                break
        if c and c[0].bit_count() + c[-1].bit_count() != n:
            problems.append(f"chain {c} is not symmetric")
    if len(seen) != 1 << n:
        problems.append(f"covers {len(seen)} of {1 << n} subsets")
    if len(d.chains) != binom(n, n // 2):
        problems.append(f"{len(d.chains)} chains, expected {binom(n, n // 2)}")
    return problems
