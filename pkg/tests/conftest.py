from __future__ import annotations

import random

from freedeg.adjunction import plus, random_semisimplicial, restrict
from freedeg.category import injective_ordinals, poset_category, walking_isomorphism
from freedeg.horn import counterexample_input
from freedeg.necklace import localization_pushout
from freedeg.sset import (
    boundary_simplex,
    disjoint_union,
    nerve,
    product,
    standard_simplex,
)


def corpus_factories():
    """Named constructors for the property suite (well over 50 objects)."""
    items = []
    for k in range(4):
        items.append((f"Delta^{k}", lambda k=k: standard_simplex(k, 4)))
        items.append((f"nerve[{k}]", lambda k=k: nerve(poset_category(k), 4)))
    for k in range(1, 4):
        items.append((f"boundary^{k}", lambda k=k: boundary_simplex(k, 4)))
    for k in range(3):
        items.append((f"plus(Delta^{k}_inj)", lambda k=k: plus(restrict(standard_simplex(k, 4)))))
        items.append((f"P(Delta^{k})", lambda k=k: localization_pushout(k, 4)))
    items.append(("nerve(Iso)", lambda: nerve(walking_isomorphism(), 4)))
    items.append(("nerve(Delta_inj<=2)", lambda: nerve(injective_ordinals(2), 3)))
    items.append(("Delta^1 x Delta^1", lambda: product(standard_simplex(1, 3), standard_simplex(1, 3))))
    items.append(("Delta^1 + Delta^2", lambda: disjoint_union(standard_simplex(1, 4), standard_simplex(2, 4))))
    items.append(("counterexample C", lambda: counterexample_input(4)))
    items.append(("plus(C)", lambda: plus(restrict(counterexample_input(3)))))
    items.append(("plus(Delta^0_inj)<=8", lambda: plus(restrict(standard_simplex(0, 8)))))
    for seed in range(30):
        items.append(
            (f"plus(random#{seed})",
             lambda seed=seed: plus(random_semisimplicial(random.Random(seed), trunc_dim=4)))
        )
    return items


CORPUS = corpus_factories()
CORPUS_NAMES = [name for name, _ in CORPUS]
_BUILT: dict = {}


def corpus_object(name: str):
    if name not in _BUILT:
        _BUILT[name] = dict(CORPUS)[name]()
    return _BUILT[name]


# -- acceptance summary lines ----------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{outcome}  {name}")
