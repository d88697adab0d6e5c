"""Tests for fixture parsing, export and seeded mutations."""

import json
from pathlib import Path

import pytest

from multicoh.cli.commands import check_fixture
from multicoh.fixtures.codec import (
    Fixture,
    build_value,
    export_builder,
    parse_fixture,
    serialize_multicat,
    serialize_multifunctor,
    serialize_nat,
    serialize_pseudo,
    write_document,
)
from multicoh.fixtures.mutation import mutable_fields, mutate, mutation_suite
from multicoh.fixtures.schema import Reference
from multicoh.functors.pseudo import PseudoSymMultiNatTrans, include_j, pseudo_equal
from multicoh.functors.symmetric import MultiNatTrans, identity_multifunctor, multifunctor_equal
from multicoh.multicat.construct import (
    SetMulticategory,
    barratt_eccles,
    discrete_multicat,
)
from multicoh.rigidify.construction import eta_star, rigidify
from multicoh.utils.exceptions import ArityMismatch, DanglingReference, SchemaError


FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN = [
    "z2_action.json",
    "z2_identity.json",
    "z2_pseudo_identity.json",
    "z2_nat.json",
    "z2_pseudonat.json",
    "eta_ass2.json",
    "rev_pr.json",
]


class PointedGroup(SetMulticategory):
    """
    Five objects, each with two constants ``p0``, ``p1`` and the group Z/2 = {e0, e1}
    acting on them by unary operations.
    """

    name = "five pointed Z/2-sets"

    @property
    def objects(self):
        return tuple(f"x{i}" for i in range(1, 6))

    def hom_set(self, sig):
        if sig.arity == 0:
            return ("p0", "p1")
        if sig.inputs[0] == sig.output:
            return ("e0", "e1")
        return ()

    def unit(self, a):
        return "e0"

    def compose(self, outer, inners, f, gs):
        if not gs:
            return f
        (g,) = gs
        return g[0] + str((int(f[1]) + int(g[1])) % 2)

    def act(self, sig, sigma, f):
        return f


def check_document(document, base_dir: Path):
    return check_fixture(Fixture(document, build_value(document, base_dir)))


def write_json(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


@pytest.fixture
def points(tmp_path):
    """Files for the points multicategory, its identity and a unit transformation."""
    m = discrete_multicat(PointedGroup(1))
    write_document(serialize_multicat(m), tmp_path / "points.json")
    ref = Reference(file="points.json")
    f = identity_multifunctor(m)
    write_document(serialize_multifunctor(f, ref, ref), tmp_path / "identity.json")
    write_document(serialize_pseudo(include_j(f), ref, ref), tmp_path / "pseudo.json")
    components = {a: "e0" for a in m.objects}
    write_document(serialize_nat(MultiNatTrans(f, f, components, name="1"),
                                 "identity.json", "identity.json"), tmp_path / "nat.json")
    write_document(serialize_nat(PseudoSymMultiNatTrans(include_j(f), include_j(f), components,
                                                         name="j1"),
                                 "pseudo.json", "pseudo.json"), tmp_path / "pseudonat.json")
    return tmp_path


class TestGoldenFixtures:
    @pytest.mark.parametrize("name", GOLDEN)
    def test_golden_fixture_passes(self, name):
        fixture = parse_fixture(FIXTURES / name)
        report = check_fixture(fixture)
        assert report.passed, report.render_text()

    def test_references_resolve_to_builders(self):
        fixture = parse_fixture(FIXTURES / "rev_pr.json")
        assert fixture.value.target is barratt_eccles(2)

    def test_pseudo_fixture_rigidifies_back(self):
        f = parse_fixture(FIXTURES / "eta_ass2.json").value
        assert pseudo_equal(eta_star(rigidify(f)), f)

    def test_rigid_fixture_restricts_back(self):
        g = parse_fixture(FIXTURES / "rev_pr.json").value
        assert multifunctor_equal(rigidify(eta_star(g), validate=False), g)

    def test_generated_files_pass(self, points):
        for name in ("points.json", "identity.json", "pseudo.json", "nat.json",
                     "pseudonat.json"):
            report = check_fixture(parse_fixture(points / name))
            assert report.passed, report.render_text()


class TestExport:
    @pytest.mark.parametrize("builder,order", [
        ("terminal", None),
        ("assoc", None),
        ("barratt_eccles", None),
        ("end_of_monoid", 2),
    ])
    def test_export_reparses_to_the_same_tables(self, tmp_path, builder, order):
        document = export_builder(builder, 2, order)
        path = tmp_path / f"{builder}.json"
        write_document(document, path)
        fixture = parse_fixture(path)
        assert check_fixture(fixture).passed
        assert serialize_multicat(fixture.value) == document

    def test_unknown_order(self):
        with pytest.raises(SchemaError):
            export_builder("end_of_monoid", 2, None)


class TestSchema:
    def test_empty_multicategory(self, tmp_path):
        path = write_json(tmp_path / "empty.json", {
            "kind": "multicat", "name": "empty", "arity_bound": 2, "payload": {"objects": []},
        })
        fixture = parse_fixture(path)
        assert fixture.value.nonempty_signatures() == []
        assert check_fixture(fixture).passed

    def test_bad_sigma_names_the_field(self, tmp_path):
        doc = json.loads((FIXTURES / "z2_action.json").read_text(encoding="utf-8"))
        doc["payload"]["actions"][0]["sigma"] = [1, 1]
        with pytest.raises(SchemaError) as info:
            parse_fixture(write_json(tmp_path / "bad.json", doc))
        assert any(p.startswith("payload.actions.0.sigma") for p in info.value.problems)

    def test_unknown_kind(self, tmp_path):
        path = write_json(tmp_path / "odd.json", {
            "kind": "operad", "name": "odd", "arity_bound": 1, "payload": {},
        })
        with pytest.raises(SchemaError):
            parse_fixture(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(SchemaError) as info:
            parse_fixture(path)
        assert info.value.problems[0].startswith("document: invalid JSON")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DanglingReference):
            parse_fixture(tmp_path / "nowhere.json")

    def test_dangling_file_reference(self, tmp_path):
        doc = json.loads((FIXTURES / "z2_identity.json").read_text(encoding="utf-8"))
        doc["payload"]["target"] = {"file": "missing.json"}
        doc["payload"]["source"] = {"file": str(FIXTURES / "z2_action.json")}
        with pytest.raises(DanglingReference):
            parse_fixture(write_json(tmp_path / "f.json", doc))

    def test_undeclared_cell(self, tmp_path):
        doc = json.loads((FIXTURES / "z2_identity.json").read_text(encoding="utf-8"))
        for key in ("source", "target"):
            doc["payload"][key] = {"file": str(FIXTURES / "z2_action.json")}
        doc["payload"]["cells"][0]["map"]["p0"] = "p7"
        with pytest.raises(DanglingReference):
            parse_fixture(write_json(tmp_path / "f.json", doc))

    def test_arity_bounds_must_agree(self, tmp_path):
        doc = json.loads((FIXTURES / "z2_identity.json").read_text(encoding="utf-8"))
        doc["arity_bound"] = 2
        for key in ("source", "target"):
            doc["payload"][key] = {"file": str(FIXTURES / "z2_action.json")}
        with pytest.raises(ArityMismatch):
            parse_fixture(write_json(tmp_path / "f.json", doc))

    def test_reference_cycle(self, tmp_path):
        doc = json.loads((FIXTURES / "z2_identity.json").read_text(encoding="utf-8"))
        doc["payload"]["source"] = {"file": "loop.json"}
        with pytest.raises(SchemaError):
            parse_fixture(write_json(tmp_path / "loop.json", doc))

    def test_reference_needs_one_form(self, tmp_path):
        doc = json.loads((FIXTURES / "rev_pr.json").read_text(encoding="utf-8"))
        doc["payload"]["target"] = {"builder": "assoc"}
        with pytest.raises(SchemaError):
            parse_fixture(write_json(tmp_path / "f.json", doc))


class TestMutations:
    @pytest.mark.parametrize("name", [
        "z2_action.json",
        "z2_identity.json",
        "z2_pseudo_identity.json",
        "eta_ass2.json",
        "rev_pr.json",
    ])
    def test_mutations_are_detected(self, name):
        fixture = parse_fixture(FIXTURES / name)
        suite = mutation_suite(fixture, seed=11, count=5)
        assert len(suite) == 5
        for document, mutation in suite:
            report = check_document(document, FIXTURES)
            assert not report.passed, str(mutation)

    @pytest.mark.parametrize("name", ["nat.json", "pseudonat.json"])
    def test_transformation_mutations_are_detected(self, points, name):
        fixture = parse_fixture(points / name)
        assert len(mutable_fields(fixture)) == 5
        for document, mutation in mutation_suite(fixture, seed=3, count=5):
            report = check_document(document, points)
            assert report.failures_for("multinat.cells"), str(mutation)

    def test_mutation_is_seeded(self):
        fixture = parse_fixture(FIXTURES / "z2_action.json")
        assert mutate(fixture, 5)[1] == mutate(fixture, 5)[1]

    def test_mutation_leaves_the_original(self):
        fixture = parse_fixture(FIXTURES / "z2_identity.json")
        before = fixture.document.model_dump()
        document, mutation = mutate(fixture, 1, slot=0)
        assert fixture.document.model_dump() == before
        assert document.model_dump() != before
        assert mutation.field == "payload.cells.0.map.p0"
