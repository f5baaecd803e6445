import pytest

from rbks import harness
from rbks.errors import ExpectationFailed, ScenarioInvalid

from conftest import TEST_LEVEL

RUNNING_EXAMPLE = f"""\
schema: 1
security_level: {TEST_LEVEL}
seed: 21
orgs:
  hospital: |
    root: director
    director -> doctor
  institute: |
    root: head
    head -> researcher
users:
  carol:
    roles: [hospital/doctor, institute/researcher]
  dan:
    roles: [institute/researcher]
documents:
  record:
    owner: hospital
    policy: [hospital/doctor, institute/researcher]
    keywords: [oncology, trial]
    payload: joint study record
events:
  - query:
      user: carol
      org: hospital
      keywords: [oncology, trial]
      expect: [record]
  - query:
      user: dan
      org: hospital
      keywords: [oncology, trial]
      expect: []
  - revoke_user:
      org: hospital
      user: carol
  - query:
      user: carol
      org: hospital
      keywords: [oncology, trial]
      expect: "reject:UnknownOrRevokedUser"
"""


class TestScenarioFormat:
    def test_load(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        assert set(s.orgs) == {"hospital", "institute"}
        assert len(s.users["carol"]) == 2
        assert s.documents["record"].keywords == ("oncology", "trial")
        assert len(s.events) == 4

    def test_unknown_schema_rejected(self):
        with pytest.raises(ScenarioInvalid):
            harness.load_scenario("schema: 2\norgs: {}\n")

    def test_not_yaml_rejected(self):
        with pytest.raises(ScenarioInvalid):
            harness.load_scenario("{ [")
        with pytest.raises(ScenarioInvalid):
            harness.load_scenario("- just\n- a list\n")

    def test_bad_role_reference(self):
        with pytest.raises(ScenarioInvalid):
            harness.parse_role("no-slash")


class TestRunScenario:
    def test_running_example(self):
        # the two-org researcher/doctor story: the dual-role user reads
        # the record, the single-role user does not
        report = harness.run_scenario(harness.load_scenario(RUNNING_EXAMPLE))
        assert report == {
            "queries": 3,
            "matches": 1,
            "rejections": 1,
            "revocations": 1,
            "ok": True,
        }

    def test_empty_event_list(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        s.events = []
        report = harness.run_scenario(s)
        assert report["queries"] == 0 and report["ok"]

    def test_deterministic_across_runs(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        assert harness.run_scenario(s) == harness.run_scenario(s)

    def test_expectation_failure_is_reported(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        s.events[0]["query"]["expect"] = []
        with pytest.raises(ExpectationFailed):
            harness.run_scenario(s)

    def test_unknown_event_rejected(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        s.events.append({"frobnicate": 1})
        with pytest.raises(ScenarioInvalid):
            harness.run_scenario(s)

    def test_revoke_then_query_yields_bottom(self):
        s = harness.load_scenario(RUNNING_EXAMPLE)
        s.events = s.events[2:]  # revocation first, then carol's query
        report = harness.run_scenario(s)
        assert report["rejections"] == 1


class TestRandomScenarios:
    @pytest.mark.parametrize("seed", range(6))
    def test_generated_scenarios_pass(self, seed):
        scenario = harness.random_scenario(seed, security_level=TEST_LEVEL)
        assert harness.run_scenario(scenario)["ok"]

    def test_generation_is_deterministic(self):
        a = harness.random_scenario(123, security_level=TEST_LEVEL)
        b = harness.random_scenario(123, security_level=TEST_LEVEL)
        assert a.orgs == b.orgs and a.users == b.users and a.events == b.events

    def test_generated_references_resolve(self):
        for seed in range(20):
            s = harness.random_scenario(seed, security_level=TEST_LEVEL)
            hierarchies = {
                org: harness.parse_hierarchy(org, text) for org, text in s.orgs.items()
            }
            for roles in s.users.values():
                for role in roles:
                    assert role in hierarchies[role.org]
            for doc in s.documents.values():
                assert doc.owner_org in s.orgs
                for role in doc.policy:
                    assert role in hierarchies[role.org]
            for event in s.events:
                if "query" in event:
                    assert event["query"]["user"] in s.users
