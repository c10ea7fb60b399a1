"""Tests for certificate and witness text codecs."""

import random

import pytest

from immersion_kit.core.exceptions import CertificateError
from immersion_kit.models.immersion import MinorModel
from immersion_kit.services.certificate import (
    CERT_HEADER,
    dump_certificate,
    dump_witness,
    parse_certificate,
    parse_witness,
)
from immersion_kit.services.decomposer import DecomposerService
from immersion_kit.services.generators import (
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    petersen_graph,
    random_connected_multigraph,
    two_k4_joined,
)
from immersion_kit.services.relations import RelationsService
from immersion_kit.services.validators import validate_immersion_model, validate_minor_model


@pytest.fixture
def decomposer(settings):
    """Create decomposer service instance."""
    return DecomposerService(settings)


@pytest.fixture
def joined_text(decomposer):
    """Create the certificate text of two joined K4s."""
    return dump_certificate(decomposer.decompose(two_k4_joined()))


class TestCertificateCodec:
    """Test cases for dump_certificate and parse_certificate."""

    def test_layout(self, joined_text):
        """Test the header, component line and explicit ids."""
        lines = joined_text.splitlines()
        assert lines[:4] == [CERT_HEADER, "components 1", "component 0", "split 8 9"]
        assert "cut 12 13 14" in lines
        assert "sides 0 1 2 3 | 4 5 6 7" in lines
        assert "vertices 0 1 2 3 8" in lines
        assert "edge 12 0 8" in lines

    def test_text_is_stable(self, joined_text):
        """Test parsing then dumping gives the same text."""
        assert dump_certificate(parse_certificate(joined_text)) == joined_text

    @pytest.mark.parametrize("seed", range(10))
    def test_parsed_trees_recompose(self, decomposer, seed):
        """Test parsed certificates recompose to the input ids."""
        rng = random.Random(seed)
        graph = random_connected_multigraph(rng.randint(5, 10), rng.randint(9, 20), rng)
        text = dump_certificate(decomposer.decompose(graph))
        parsed = parse_certificate(text)
        assert decomposer.recompose(parsed[0]) == graph
        assert dump_certificate(parsed) == text

    def test_planar_subcubic_leaf(self, decomposer):
        """Test a certificate without a decomposition block."""
        text = dump_certificate(decomposer.decompose(cube_graph()))
        assert text.rstrip().endswith("certificate planar-subcubic")
        assert decomposer.verify_certificate(cube_graph(), parse_certificate(text)).passed

    def test_comments_are_ignored(self, joined_text):
        """Test comments and blank lines between records."""
        commented = "# produced by a test\n\n" + joined_text.replace("leaf\n", "leaf  # piece\n", 1)
        assert dump_certificate(parse_certificate(commented)) == joined_text

    @pytest.mark.parametrize("mutate", [
        lambda text: text.replace(CERT_HEADER, "immersion-kit-cert v0"),
        lambda text: text[:text.index("leaf")],
        lambda text: text.replace("branchwidth-at-most", "treewidth-at-most", 1),
        lambda text: text + "leaf\n",
        lambda text: text.replace("components 1", "components 2"),
        lambda text: text.replace("bd ", "bd 1", 1),
        lambda text: text.replace("sides 0 1 2 3 | 4 5 6 7", "sides 0 1 2 3 4 5 6 7"),
        lambda text: text.replace("edge 12 0 8", "edge 12 0 x"),
    ])
    def test_malformed(self, joined_text, mutate):
        """Test malformed certificates raise CertificateError."""
        with pytest.raises(CertificateError):
            parse_certificate(mutate(joined_text))


class TestWitnessCodec:
    """Test cases for witness files."""

    @pytest.fixture
    def relations(self, settings):
        """Create relations service instance."""
        return RelationsService(settings)

    def test_immersion_witness(self, relations):
        """Test a K3,3 witness in the Petersen graph re-validates after parsing."""
        petersen = petersen_graph()
        k33 = complete_bipartite(3, 3)
        model = relations.contains_immersion(petersen, k33)
        text = dump_witness(model)
        assert text.startswith("witness weak\n")
        parsed = parse_witness(text, petersen)
        assert parsed == model
        assert validate_immersion_model(petersen, k33, parsed) == []

    def test_minor_witness(self, relations):
        """Test a minor witness round trip."""
        hexagon = cycle_graph(6)
        model = relations.contains_minor(hexagon, complete_graph(3))
        parsed = parse_witness(dump_witness(model), hexagon)
        assert isinstance(parsed, MinorModel)
        assert parsed == model
        assert validate_minor_model(hexagon, complete_graph(3), parsed) == []

    @pytest.mark.parametrize("text", [
        "",
        "model weak\n",
        "witness sideways\n",
        "witness weak\n0 => 1\n",
        "witness weak\npath 0 0 99\n",
        "witness minor\nbranch x: 1\n",
    ])
    def test_malformed(self, text):
        """Test malformed witnesses raise CertificateError."""
        with pytest.raises(CertificateError):
            parse_witness(text, cube_graph())
