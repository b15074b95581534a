import json
import re

from hypothesis import given
from hypothesis import strategies as st

from ccgplan import (
    Atom,
    Binary,
    CombinatorKind,
    Functor,
    Leaf,
    ParseGoal,
    RuleConfig,
    Ternary,
    Unary,
    parse_all,
    parse_category,
    tag_with_lexicon,
    to_ascii,
    to_dot,
    to_json,
    tree_from_json,
)
from ccgplan.trees import node_count

C = parse_category
K = CombinatorKind

GOLDEN_ASCII = """\
The   dog  bit        John
NP/N  N    (S\\NP)/NP  NP
-------->  -------------->
NP         S\\NP
-------------------------<
S"""


def golden(demo_lexicon):
    ts = tag_with_lexicon(["The", "dog", "bit", "John"], demo_lexicon)
    (tree,) = parse_all(ts, RuleConfig(), ParseGoal.strict())
    return tree


def test_ascii_golden_layout(demo_lexicon):
    assert to_ascii(golden(demo_lexicon)) == GOLDEN_ASCII


def test_ascii_labels_read_bottom_up(demo_lexicon):
    text = to_ascii(golden(demo_lexicon))
    labels = re.findall(r"-+(>B|<B|>T|<T|<Bx|<Sx|&|>|<)", text)
    assert labels == [">", ">", "<"]


def test_ascii_single_leaf():
    assert to_ascii(Leaf("John", C("NP"), 4)) == "John\nNP"


def test_ascii_forest_side_by_side():
    forest = (Leaf("a", C("N"), 1), Leaf("b", C("N"), 2))
    assert to_ascii(forest) == "a  b\nN  N"


def test_ascii_wide_category_over_narrow_leaf():
    tree = Unary(K.FWD_RAISE, C(r"S/(S\NP)"), Leaf("it", C("NP"), 1))
    lines = to_ascii(tree).splitlines()
    assert lines[-1] == r"S/(S\NP)"
    assert lines[-2].endswith(">T")


def test_json_leaf_fields():
    doc = json.loads(to_json(Leaf("John", C("NP"), 4)))
    assert doc == {"kind": "Leaf", "category": "NP", "pos": 4, "word": "John", "children": []}


def test_json_root_of_golden(demo_lexicon):
    doc = json.loads(to_json(golden(demo_lexicon)))
    assert doc["kind"] == "BwdAppl"
    assert doc["category"] == "S"
    assert len(doc["children"]) == 2


def test_json_round_trip_golden(demo_lexicon):
    tree = golden(demo_lexicon)
    assert tree_from_json(to_json(tree)) == tree


_atoms = st.sampled_from(["S", "NP", "N", "PP"])
_cats = st.recursive(
    st.builds(Atom, _atoms),
    lambda inner: st.builds(Functor, inner, inner, st.booleans()),
    max_leaves=4,
)
_words = st.none() | st.text(alphabet="abcdefg", min_size=1, max_size=5)
_leaves = st.builds(Leaf, _words, _cats, st.integers(1, 99))
_unary_kinds = st.sampled_from([K.FWD_RAISE, K.BWD_RAISE])
_binary_kinds = st.sampled_from([K.FWD_APPL, K.BWD_APPL, K.FWD_COMP, K.BWD_COMP, K.BWD_XCOMP])


def _internal(children):
    return st.one_of(
        st.builds(Unary, _unary_kinds, _cats, children),
        st.builds(Binary, _binary_kinds, _cats, children, children),
        st.builds(Ternary, st.just(K.COORD), _cats, children, children, children),
    )


_trees = st.recursive(_leaves, _internal, max_leaves=6)


@given(_trees)
def test_json_round_trip_random_trees(tree):
    assert tree_from_json(to_json(tree)) == tree


@given(_trees)
def test_formats_agree_on_node_count(tree):
    dot = to_dot(tree)
    count = node_count(tree)
    assert len(re.findall(r"^\s*n\d+ \[label=", dot, flags=re.M)) == count
    assert len(re.findall(r"->", dot)) == count - 1

    def json_nodes(obj):
        return 1 + sum(json_nodes(c) for c in obj["children"])

    assert json_nodes(json.loads(to_json(tree))) == count


def test_dot_escapes_backslashes(demo_lexicon):
    dot = to_dot(golden(demo_lexicon))
    assert r"S\\NP" in dot
    assert "digraph" in dot and dot.rstrip().endswith("}")


def test_dot_leaf_label_includes_word():
    dot = to_dot(Leaf("John", C("NP"), 4))
    assert 'label="John\\nNP"' in dot


def test_dot_stable_ids(demo_lexicon):
    assert to_dot(golden(demo_lexicon)) == to_dot(golden(demo_lexicon))
    assert to_dot(golden(demo_lexicon)).splitlines()[2].startswith("  n0 ")
