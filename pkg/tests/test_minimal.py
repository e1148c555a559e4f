from fractions import Fraction

import pytest

from adamsbar.cdga import CdgaPresentation, GeneratorSpec, el_gen
from adamsbar.minimal import (
    augment_absolute,
    generalized_nilpotent_check,
    qa_colie,
    quillen_compare,
    relative_minimal_model,
    trivial_base,
)
from corpus import make_e1, make_e2, make_e3, make_e4, random_gen_nilpotent
import oracles

F = Fraction


def test_absolute_model_e2():
    A = augment_absolute(make_e2())
    mm = relative_minimal_model(trivial_base(), A, 1, 3)
    assert mm.certified(), mm.certification
    counts = {}
    for name in mm.fiber_names:
        g = mm.model.gen[name]
        assert g.coh == 1
        counts[g.adams] = counts.get(g.adams, 0) + 1
    assert counts == {1: 2, 2: 1, 3: 2}  # Lyndon dims for two letters
    assert counts == {w: oracles.lyndon_count(2, w) for w in (1, 2, 3)}


def test_e3_is_its_own_model():
    A = augment_absolute(make_e3())
    mm = relative_minimal_model(trivial_base(), A, 1, 3)
    assert mm.certified()
    assert mm.fiber_count() == 3
    degs = sorted((mm.model.gen[n].coh, mm.model.gen[n].adams) for n in mm.fiber_names)
    assert degs == [(1, 1), (1, 1), (1, 2)]


def test_relative_model_e4_idempotent():
    N = make_e1("t")
    A = make_e4()
    mm = relative_minimal_model(N, A, 2, 3)
    assert mm.certified(), mm.certification
    degs = sorted((mm.model.gen[n].coh, mm.model.gen[n].adams) for n in mm.fiber_names)
    assert degs == [(1, 1), (1, 2)]  # mirrors u, v
    # idempotence: model of the model adds nothing new
    mm2 = relative_minimal_model(N, mm.model, 2, 3)
    assert mm2.certified()
    assert mm2.fiber_count() == mm.fiber_count()


def test_stage_log_single_pass():
    N = make_e1("t")
    mm = relative_minimal_model(N, make_e4(), 2, 3)
    # every stage settles within the fixpoint loop
    for entry in mm.stage_log:
        assert entry["iterations"] <= 3


def test_gen_nilpotent_check_fixtures():
    ok, stages = generalized_nilpotent_check(trivial_base(), make_e3())
    assert ok
    assert stages == [["x", "y"], ["z"]]
    ok, stages = generalized_nilpotent_check(make_e1("t"), make_e4())
    assert ok
    assert stages == [["u"], ["v"]]


def test_gen_nilpotent_cycle_detected():
    gens = [GeneratorSpec("a", 2, 1), GeneratorSpec("b", 3, 2)]
    A = CdgaPresentation("cyc", "free", gens)
    # db depends on a*b's weight... simplest: db = a*b would be (5,3) no.
    # use db involving b itself through a: d(b) has bidegree (4,2): a*a
    A.differential = {"b": A.multiply(el_gen("a"), el_gen("a"))}
    ok, stages = generalized_nilpotent_check(trivial_base(), A)
    assert ok  # a*a is fine: depends only on a
    B = CdgaPresentation("cyc2", "free", [GeneratorSpec("g", 2, 1),
                                          GeneratorSpec("h", 2, 2)])
    B.differential = {"g": {}, "h": B.multiply(el_gen("h"), {(): F(1)})}
    ok, cyc = generalized_nilpotent_check(trivial_base(), B)
    assert not ok
    assert "h" in cyc


def test_qa_e3():
    qa = qa_colie(make_e3(), 2)
    assert qa.dims() == {1: 2, 2: 1}
    names = {name for _, name in qa.basis}
    assert len(names) == 3
    # the weight-2 generator cobrackets onto the wedge of the weight-1 pair
    (g2,) = qa.by_weight[2]
    cb = qa.cobracket[g2]
    a, b = qa.by_weight[1]
    assert set(cb) == {(a, b)} and cb[(a, b)] != 0


def test_qa_e1():
    qa = qa_colie(make_e1(), 3)
    assert qa.dims() == {1: 1}
    assert qa.cobracket[0] == {}


def test_qa_e2_dims():
    qa = qa_colie(make_e2(), 3)
    assert qa.dims() == {1: 2, 2: 1, 3: 2}


@pytest.mark.parametrize("mk", [make_e1, make_e2, make_e3])
def test_quillen_compare(mk):
    ok, details = quillen_compare(mk(), 3)
    assert ok, details


@pytest.mark.parametrize("seed", [1, 3, 5])
def test_quillen_compare_random_gen_nilpotent(seed):
    A = random_gen_nilpotent(seed)
    ok, details = quillen_compare(A, 3)
    assert ok, details
