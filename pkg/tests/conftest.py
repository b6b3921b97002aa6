"""Shared fixtures: the small algebra corpus used across the suite."""

import pytest

from qtilt.exactla import QQ
from qtilt.quivercore import Arrow, Path, PathSum, Quiver, build_algebra


def make_kronecker(name="kron"):
    q = Quiver(["1", "2"], [Arrow("a0", "2", "1"), Arrow("a1", "2", "1")])
    return build_algebra(q, [], QQ, name=name)


def make_a2(name="a2"):
    q = Quiver(["1", "2"], [Arrow("a", "2", "1")])
    return build_algebra(q, [], QQ, name=name)


def make_a3(name="a3"):
    q = Quiver(["1", "2", "3"], [Arrow("a", "2", "1"), Arrow("b", "3", "2")])
    return build_algebra(q, [], QQ, name=name)


def make_a3_nilpotent(name="a3nil"):
    q = Quiver(["1", "2", "3"], [Arrow("a", "2", "1"), Arrow("b", "3", "2")])
    rel = PathSum(QQ, [(1, Path.of(q, ["a", "b"]))])
    return build_algebra(q, [rel], QQ, name=name)


def make_loop_nilpotent(name="loop2"):
    q = Quiver(["1"], [Arrow("x", "1", "1")])
    rel = PathSum(QQ, [(1, Path.of(q, ["x", "x"]))])
    return build_algebra(q, [rel], QQ, name=name)


def make_semisimple(n=2, name="ss"):
    q = Quiver([str(i + 1) for i in range(n)], [])
    return build_algebra(q, [], QQ, name=name)


def make_square(name="square"):
    """Commutative square: two arrow pairs from a source corner to a sink
    corner, with the single commutativity relation."""
    q = Quiver(["11", "12", "21", "22"],
               [Arrow("f", "22", "12"), Arrow("g", "22", "21"),
                Arrow("p", "12", "11"), Arrow("q", "21", "11")])
    rel = PathSum(QQ, [(1, Path.of(q, ["p", "f"])),
                       (-1, Path.of(q, ["q", "g"]))])
    return build_algebra(q, [rel], QQ, name=name)


@pytest.fixture(scope="session")
def kron():
    return make_kronecker()


@pytest.fixture(scope="session")
def a2():
    return make_a2()


@pytest.fixture(scope="session")
def a3():
    return make_a3()


@pytest.fixture(scope="session")
def a3nil():
    return make_a3_nilpotent()


@pytest.fixture(scope="session")
def loop2():
    return make_loop_nilpotent()


@pytest.fixture(scope="session")
def ss2():
    return make_semisimple(2)


@pytest.fixture(scope="session")
def square():
    return make_square()


@pytest.fixture(scope="session")
def corpus(kron, a2, a3, a3nil, loop2, ss2):
    """The fixed six-algebra corpus for structural property suites."""
    return [kron, a2, a3, a3nil, loop2, ss2]


@pytest.fixture(scope="session")
def kron2(kron):
    from qtilt.tensorcon import tensor_algebras
    return tensor_algebras(kron, kron)


@pytest.fixture(scope="session")
def a2xa2(a2):
    from qtilt.tensorcon import tensor_algebras
    return tensor_algebras(a2, a2)


@pytest.fixture(scope="session")
def kronxa2(kron, a2):
    from qtilt.tensorcon import tensor_algebras
    return tensor_algebras(kron, a2)
