import random

import pytest
from hypothesis import given, strategies as st

from codecarta.errors import AmbiguousSiblingsError, TokenParseError
from codecarta.tokens import (
    ForestNode,
    Token,
    assign_tokens,
    is_ancestor,
    parse_token,
    render_token,
)

from conftest import make_random_forest, shuffled_copy


def test_render_examples():
    assert render_token(Token((0, 3, 12))) == "0.3.12"
    assert render_token(Token((0,))) == "0"


def test_parse_examples():
    assert parse_token("0") == Token((0,))
    assert parse_token("0.3.12") == Token((0, 3, 12))


@pytest.mark.parametrize(
    "text,offset",
    [
        ("", 0),
        (".", 0),
        ("0..1", 2),
        ("01", 0),
        ("0.01", 2),
        ("a", 0),
        ("0.", 2),
        ("0,1", 1),
        ("1 ", 1),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(TokenParseError) as exc:
        parse_token(text)
    assert exc.value.offset == offset


def test_token_ordering_is_lexicographic():
    assert Token((0,)) < Token((0, 1)) < Token((0, 2)) < Token((1,))
    assert Token((0, 2)) < Token((0, 10))


def test_token_parent():
    assert Token((0, 1, 2)).parent == Token((0, 1))
    assert Token((0,)).parent is None


def test_is_ancestor_examples():
    assert is_ancestor(Token((0,)), Token((0, 1, 2)))
    assert not is_ancestor(Token((0, 1)), Token((0, 2)))
    assert not is_ancestor(Token((0, 1)), Token((0, 1)))


def test_is_ancestor_matches_string_prefix_oracle():
    rng = random.Random(7)
    for _ in range(2000):
        a = Token(tuple(rng.randint(0, 12) for _ in range(rng.randint(1, 5))))
        b = Token(tuple(rng.randint(0, 12) for _ in range(rng.randint(1, 5))))
        oracle = a != b and (render_token(b) + ".").startswith(render_token(a) + ".")
        assert is_ancestor(a, b) == oracle


@given(st.lists(st.integers(min_value=0, max_value=10**9), min_size=1, max_size=8))
def test_parse_render_round_trip(path):
    token = Token(tuple(path))
    assert parse_token(render_token(token)) == token


def _solution_with_projects(names):
    root = ForestNode(key="S", kind_rank=0, name="S")
    root.children = [
        ForestNode(key=name, kind_rank=1, name=name) for name in names
    ]
    return [root]


def test_assignment_orders_siblings_by_name():
    tokens = assign_tokens(_solution_with_projects(["B", "A"]))
    assert tokens == {"S": Token((0,)), "A": Token((0, 0)), "B": Token((0, 1))}


def test_assignment_ignores_discovery_order():
    assert assign_tokens(_solution_with_projects(["B", "A"])) == assign_tokens(
        _solution_with_projects(["A", "B"])
    )


def test_depth_four_chain():
    solution = ForestNode(key=0, kind_rank=0, name="s")
    project = ForestNode(key=1, kind_rank=1, name="p")
    namespace = ForestNode(key=2, kind_rank=2, name="n")
    type_node = ForestNode(key=3, kind_rank=3, name="T")
    solution.children = [project]
    project.children = [namespace]
    namespace.children = [type_node]
    tokens = assign_tokens([solution])
    assert len(tokens[3].path) == 4


def test_duplicate_siblings_rejected_naming_parent():
    root = ForestNode(key=0, kind_rank=0, name="s")
    root.children = [
        ForestNode(key=1, kind_rank=1, name="p"),
        ForestNode(key=2, kind_rank=1, name="p"),
    ]
    with pytest.raises(AmbiguousSiblingsError) as exc:
        assign_tokens([root])
    assert exc.value.parent_name == "s"


def test_assignment_bijective_and_permutation_invariant():
    for seed in range(300):
        rng = random.Random(seed)
        roots = make_random_forest(rng)
        tokens = assign_tokens(roots)
        values = list(tokens.values())
        assert len(set(values)) == len(values)
        assert assign_tokens(shuffled_copy(roots, rng)) == tokens


def test_token_order_equals_preorder_traversal():
    for seed in range(100):
        rng = random.Random(1000 + seed)
        roots = make_random_forest(rng)
        tokens = assign_tokens(roots)

        preorder = []

        def walk(node):
            preorder.append(node.key)
            for child in sorted(node.children, key=lambda c: c.sort_key):
                walk(child)

        for root in sorted(roots, key=lambda r: r.sort_key):
            walk(root)

        by_token = [key for key, _ in sorted(tokens.items(), key=lambda kv: kv[1])]
        assert by_token == preorder
