import io
import json

import jsonschema
import pytest

from pcmfix.audit import (
    FINDING_SCHEMA,
    Finding,
    audit_corpus,
    audit_instance,
    corpus_instance,
    write_findings,
)
from pcmfix.cli import load
from pcmfix.contraction import min_constant
from pcmfix.space import check_pcm_axioms


def _fixture_audit(name):
    doc = load(name)
    space = doc.space()
    return audit_instance(None, space, doc.tmap(space), instance=f"fixture-{name}")


def test_worked_examples_have_no_findings():
    for name in ("kannan_example", "chatterjea_example"):
        audit = _fixture_audit(name)
        assert audit.passing_conditions and audit.runs > 0
        assert audit.findings == []


def test_selection_failure_fixture_is_a_genuine_counterexample():
    doc = load("selection_failure")
    space = doc.space()
    tmap = doc.tmap(space)
    assert check_pcm_axioms(space).passed
    assert tmap.images_in_cbp(space)
    assert min_constant(space, tmap, "kannan").below_threshold
    audit = _fixture_audit("selection_failure")
    kinds = {f.kind for f in audit.findings}
    assert kinds == {"selection-failure"}
    assert {f.condition for f in audit.findings} == {"kannan", "chatterjea", "nadler"}
    f = audit.findings[0]
    assert f.instance == "fixture-selection_failure" and f.seed is None
    assert f.start == "u" and f.trace == ["u", "a", "b1"]


def test_findings_log_matches_schema():
    audits = [_fixture_audit("selection_failure"), *audit_corpus(range(30))]
    buf = io.StringIO()
    count = write_findings(audits, buf)
    lines = buf.getvalue().splitlines()
    assert count == len(lines) > 0
    for line in lines:
        jsonschema.validate(json.loads(line), FINDING_SCHEMA)


def test_schema_rejects_malformed_findings():
    good = json.loads(Finding("seed-1", 1, "not-fixed", "kannan", "1/3", "x0", ["x0"], "d").to_json())
    jsonschema.validate(good, FINDING_SCHEMA)
    for bad in (
        {**good, "kind": "mystery"},
        {**good, "constant": "0.5"},
        {**good, "extra": 1},
        {k: v for k, v in good.items() if k != "trace"},
    ):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(bad, FINDING_SCHEMA)


def test_corpus_is_seeded():
    for seed in (0, 5, 77):
        s1, t1 = corpus_instance(seed)
        s2, t2 = corpus_instance(seed)
        assert s1.p_table == s2.p_table and t1 == t2


def test_corpus_has_contractive_instances():
    audits = audit_corpus(range(120))
    assert sum(a.runs for a in audits) > 0
    passing = {k for a in audits for k in a.passing_conditions}
    assert passing == {"kannan", "chatterjea", "nadler"}
