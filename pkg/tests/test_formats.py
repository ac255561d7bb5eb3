"""
Tests for the JSON instance codecs and reports.
"""

import json

import pytest

from admissible_cubes import __version__
from admissible_cubes.adjugates import typical_adjugate
from admissible_cubes.bue import be_check
from admissible_cubes.cubes import koszul_complex, typical_cube
from admissible_cubes.doublecubes import chain_double_cube
from admissible_cubes.exceptions import SchemaError
from admissible_cubes.formats import (
    be_report_to_dict,
    bundle_to_dict,
    complex_to_dict,
    cube_to_dict,
    double_to_dict,
    dumps,
    lattice_to_dict,
    load_instance,
    make_report,
    parse_instance,
)
from admissible_cubes.lattices import TableLattice
from admissible_cubes.modules import FPModule, ModuleMorphism
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)


def scalar_cube_data():
    """``Typ(2; Z)`` written out by hand."""
    return {
        "ring": "ZZ",
        "kind": "cube",
        "index": ["a"],
        "vertices": {"": {"gens": 1}, "a": {"gens": 1}},
        "boundaries": {"a|a": {"rows": 1, "cols": 1, "entries": ["2"]}},
    }


class TestDecoding:
    """Instances read back into library objects."""

    def test_hand_written_cube(self):
        kind, x = parse_instance(scalar_cube_data())
        assert kind == "cube"
        assert x == typical_cube([2], ONE)

    def test_cube_written_by_the_library(self):
        x = typical_cube([2, 3], ONE)
        assert parse_instance(cube_to_dict(x)) == ("cube", x)

    def test_double_cube(self):
        x = chain_double_cube([ModuleMorphism.scalar(ONE, 2), ModuleMorphism.scalar(ONE, 3)])
        assert parse_instance(double_to_dict(x)) == ("double", x)

    def test_complex(self):
        complex_ = koszul_complex([2, 3], ONE)
        kind, parsed = parse_instance(complex_to_dict(complex_))
        assert kind == "complex"
        assert parsed.homology_invariants() == complex_.homology_invariants()

    def test_adjugate_bundle(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        kind, (parsed_x, parsed_adj) = parse_instance(bundle_to_dict(x, adj))
        assert kind == "adjugate-bundle"
        assert parsed_x == x
        assert parsed_adj == adj

    def test_lattice(self):
        kind, lattice = parse_instance(lattice_to_dict(TableLattice.pentagon()))
        assert kind == "lattice"
        assert lattice.names == TableLattice.pentagon().names

    def test_family_over_a_table(self):
        data = {
            "kind": "family",
            "lattice": lattice_to_dict(TableLattice.diamond()),
            "members": {"s": "a", "t": "b"},
            "y": "c",
        }
        data["lattice"].pop("kind")
        _, value = parse_instance(data)
        assert value.family.lattice.name(value.y) == "c"
        assert value.subobjects is None

    def test_family_of_ideals(self):
        def ideal(n):
            return {"rows": 1, "cols": 1, "entries": [str(n)]}

        data = {"ring": "ZZ", "kind": "family", "ambient": {"gens": 1},
                "members": {"a": ideal(4), "b": ideal(6)}}
        _, value = parse_instance(data)
        family = value.family
        join = value.subobjects.lattice.subobject(family.join_over(["a", "b"]))
        assert join.generators.entries in ((2,), (-2,))

    def test_ring_override(self):
        _, x = parse_instance(scalar_cube_data(), RingDescriptor.integers_mod(4))
        assert x.ring == RingDescriptor.integers_mod(4)


class TestSchemaErrors:
    """Malformed payloads raise SchemaError."""

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("kind"),
        lambda d: d.update(kind="sphere"),
        lambda d: d.update(extra=1),
        lambda d: d.update(ring="R"),
        lambda d: d.update(boundaries={"a|a|a": {"rows": 1, "cols": 1, "entries": ["2"]}}),
        lambda d: d.update(boundaries={"|a": {"rows": 1, "cols": 1, "entries": ["2"]}}),
        lambda d: d.update(boundaries={}),
        lambda d: d["vertices"].update(b={"gens": 1}),
    ])
    def test_invalid_cube(self, mutate):
        data = scalar_cube_data()
        mutate(data)
        with pytest.raises(SchemaError):
            parse_instance(data)

    def test_not_an_object(self):
        with pytest.raises(SchemaError):
            parse_instance([1, 2])


class TestFiles:
    """Reading instance files."""

    def test_load_and_digest(self, tmp_path):
        path = tmp_path / "cube.json"
        path.write_text(json.dumps(scalar_cube_data()))
        kind, x, digest = load_instance(str(path))
        assert kind == "cube"
        assert x.labels == ("a",)
        assert len(digest) == 64

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        with pytest.raises(SchemaError):
            load_instance(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(SchemaError):
            load_instance(str(tmp_path / "absent.json"))


class TestReports:
    """Report envelopes and deterministic output."""

    def test_envelope(self):
        report = make_report("check", True, {"admissible": True}, digest="abc")
        assert report["version"] == __version__
        assert report["input_digest"] == "abc"
        assert set(report) == {"check", "result", "witness", "details", "version",
                               "input_digest"}

    def test_dumps_sorts_keys(self):
        assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')

    def test_be_report(self):
        data = be_report_to_dict(be_check(koszul_complex([2, 2], ONE)))
        assert data["r"] == [1, 1]
        assert data["fitting_canonical"] == ["(2)", "(2)"]
        assert data["grades"] == ["1", "1"]
        assert data["witness"] == 2


if __name__ == "__main__":
    pytest.main([__file__])
