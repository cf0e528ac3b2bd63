import csv
from datetime import date

import numpy as np
import pytest

from vetrank.ingestion import (
    DEFAULT_CRITERIA,
    ContractRecord,
    ContractType,
    EmptyWindowError,
    GraduateRecord,
    ParseError,
    PersonCriteria,
    SectorFamilyMap,
    aggregate,
    build_yearly_results,
    compute_person_criteria,
    load_datasets,
    merge_intervals,
    percentile_panel,
    person_criteria,
    select_window,
)
from vetrank.model import RankingResult

OBSERVATION_END = date(2012, 12, 31)


def load_hand_fixture(hand_fixture_dir):
    return load_datasets(
        hand_fixture_dir / "graduates.csv",
        hand_fixture_dir / "contracts.csv",
        hand_fixture_dir / "sector_map.csv",
        observation_end=OBSERVATION_END,
    )


def read_expected(hand_fixture_dir):
    expected = {}
    with open(hand_fixture_dir / "expected_criteria.csv", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    header = rows[0]
    for row in rows[1:]:
        entry = dict(zip(header, row))
        key = (entry["person_id"], entry["program_id"])
        expected[key] = {
            f"C{k}": (float(entry[f"c{k}"]) if entry[f"c{k}"] != "" else None) for k in range(1, 9)
        }
    return expected


class TestLoadDatasets:
    def test_links_and_dedups(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        assert len(dataset.graduates) == 7
        assert dataset.orphan_contracts == 1  # the PX row
        assert len(dataset.contracts_for("P4")) == 2  # duplicate row collapsed
        assert dataset.contracts_for("P2") == ()

    def test_open_ended_contract_capped(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        [contract] = dataset.contracts_for("P3")
        assert contract.end_date == OBSERVATION_END

    def test_observation_end_inferred_from_data(self, hand_fixture_dir):
        dataset = load_datasets(
            hand_fixture_dir / "graduates.csv",
            hand_fixture_dir / "contracts.csv",
            hand_fixture_dir / "sector_map.csv",
        )
        assert dataset.observation_end == date(2012, 2, 29)  # latest date in the files

    def test_parse_error_names_row(self, tmp_path, hand_fixture_dir):
        bad = tmp_path / "graduates.csv"
        bad.write_text("person_id,program_id,family_id,graduation_date\nP1,PRG,FAM,not-a-date\n")
        with pytest.raises(ParseError, match="row 2"):
            load_datasets(bad, hand_fixture_dir / "contracts.csv", hand_fixture_dir / "sector_map.csv")

    def test_bad_contract_type_rejected(self, tmp_path, hand_fixture_dir):
        bad = tmp_path / "contracts.csv"
        bad.write_text(
            "person_id,start_date,end_date,contract_type,sector_code\nP1,2010-01-01,2010-02-01,X,S1\n"
        )
        with pytest.raises(ParseError, match="T or I"):
            load_datasets(hand_fixture_dir / "graduates.csv", bad, hand_fixture_dir / "sector_map.csv")

    def test_unknown_sector_maps_to_empty_with_warning(self, hand_fixture_dir, caplog):
        dataset = load_hand_fixture(hand_fixture_dir)
        with caplog.at_level("WARNING"):
            assert dataset.sector_map.families("S9") == frozenset()
        assert "S9" in caplog.text

    def test_many_to_many_sector_map(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        assert dataset.sector_map.families("S3") == frozenset({"FAM_A", "FAM_B"})


class TestMergeIntervals:
    def test_overlap_union(self):
        # Jan1-Mar1 and Feb1-Apr1 merge into Jan1-Apr1
        jan1, feb1, mar1, apr1 = (date(2010, m, 1).toordinal() for m in (1, 2, 3, 4))
        assert merge_intervals([(jan1, mar1), (feb1, apr1)]) == [(jan1, apr1)]

    def test_disjoint_kept_separate(self):
        assert merge_intervals([(1, 3), (10, 12)]) == [(1, 3), (10, 12)]

    def test_adjacent_days_merge(self):
        assert merge_intervals([(1, 3), (4, 6)]) == [(1, 6)]


class TestPersonCriteria:
    def test_hand_fixture_exact(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        expected = read_expected(hand_fixture_dir)
        records = compute_person_criteria(dataset)
        assert len(records) == len(expected)
        for record in records:
            want = expected[(record.person_id, record.program_id)]
            got = record.as_dict()
            assert got == want, f"{record.person_id}: {got} != {want}"

    def test_zero_contract_person(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        [p2] = [r for r in compute_person_criteria(dataset) if r.person_id == "P2"]
        assert p2.c1 is p2.c2 is p2.c3 is p2.c4 is p2.c5 is p2.c6 is p2.c7 is None
        assert p2.c8 == 944.0

    def test_saturated_person(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        [p3] = [r for r in compute_person_criteria(dataset) if r.person_id == "P3"]
        assert (p3.c1, p3.c3, p3.c4, p3.c5, p3.c7, p3.c8) == (1.0, 1.0, 1.0, 1.0, 1.0, 0.0)
        assert p3.c2 is None and p3.c6 is None

    def test_sum_identity_on_attributed_days(self, hand_fixture_dir):
        # in-field + out-of-field worked days equals total worked days
        dataset = load_hand_fixture(hand_fixture_dir)
        for graduate in dataset.graduates:
            contracts = [
                c for c in dataset.contracts_for(graduate.person_id) if c.start_date >= graduate.graduation_date
            ]
            grad_ord = graduate.graduation_date.toordinal()
            obs_ord = OBSERVATION_END.toordinal()

            def clipped(cs):
                return [
                    (max(c.start_date.toordinal(), grad_ord + 1), min(c.end_date.toordinal(), obs_ord))
                    for c in cs
                    if max(c.start_date.toordinal(), grad_ord + 1) <= min(c.end_date.toordinal(), obs_ord)
                ]

            def days(cs):
                return sum(hi - lo + 1 for lo, hi in merge_intervals(clipped(cs)))

            in_field = [c for c in contracts if graduate.family_id in dataset.sector_map.families(c.sector_code)]
            total = days(contracts)
            covered_by_field = days(in_field)
            out_field_only = total - covered_by_field
            record = person_criteria(graduate, contracts, dataset.sector_map, OBSERVATION_END)
            if record.c3 is not None:
                assert covered_by_field + out_field_only == total
                assert record.c3 == covered_by_field / total

    def test_window_identity(self, hand_fixture_dir):
        # uncovered days + covered days span the post-graduation window exactly
        dataset = load_hand_fixture(hand_fixture_dir)
        for record in compute_person_criteria(dataset):
            graduate = next(
                g for g in dataset.graduates if (g.person_id, g.program_id) == (record.person_id, record.program_id)
            )
            window = (OBSERVATION_END - graduate.graduation_date).days
            covered = window - record.c8
            assert covered >= 0
            if record.c3 is None:
                assert covered == 0

    def test_graduation_after_observation_end_rejected(self):
        graduate = GraduateRecord("P", "PRG", "FAM", date(2015, 1, 1))
        with pytest.raises(ValueError, match="after observation end"):
            person_criteria(graduate, (), SectorFamilyMap([]), date(2012, 12, 31))

    def test_negative_gap_clamped(self):
        graduate = GraduateRecord("P", "PRG", "FAM_A", date(2010, 1, 1))
        contracts = (
            ContractRecord("P", date(2010, 2, 1), date(2010, 6, 1), ContractType.TEMPORARY, "S1"),
            ContractRecord("P", date(2010, 3, 1), date(2010, 4, 1), ContractType.TEMPORARY, "S1"),
        )
        record = person_criteria(graduate, contracts, SectorFamilyMap([("S1", "FAM_A")]), date(2010, 12, 31))
        assert record.c6 == 0.0  # second contract starts before the first ends
        assert record.c2 == 0.0


def pc(person, program, year, **values):
    defaults = dict(c1=None, c2=None, c3=None, c4=None, c5=None, c6=None, c7=None, c8=0.0)
    defaults.update(values)
    return PersonCriteria(person, program, year, **defaults)


def full(person, program, year, c1):
    return PersonCriteria(person, program, year, c1, 1.0, 0.5, 0.5, 1.0, 1.0, 0.5, 10.0)


class TestAggregate:
    def test_even_count_median(self):
        records = [full(f"P{i}", "PRG", 2010, c1) for i, c1 in enumerate((10, 20, 30, 40, 50, 60))]
        records += [full(f"Q{i}", "OTHER", 2010, 5.0 + i) for i in range(6)]
        result = aggregate(records, 2010)
        row = result.matrix.alternatives.index("PRG")
        col = result.matrix.criterion_ids.index("C1")
        assert result.matrix.values[row, col] == 35.0
        assert result.matrix.support_counts[row, col] == 6

    def test_exactly_five_defined_excluded(self):
        records = [full(f"P{i}", "PRG", 2010, 10.0 + i) for i in range(5)]
        result = aggregate(records, 2010)
        assert result.program_count == 0
        assert [(d.program_id, d.support) for d in result.dropped] == [("PRG", 5)]

    def test_partial_criterion_support_excludes(self):
        # seven persons but only four with C2 defined
        records = [full(f"P{i}", "PRG", 2010, 10.0 + i) for i in range(7)]
        records = records[:4] + [
            PersonCriteria(f"P{i}", "PRG", 2010, 10.0 + i, None, 0.5, 0.5, 1.0, 1.0, 0.5, 10.0)
            for i in range(4, 7)
        ]
        result = aggregate(records, 2010)
        assert result.program_count == 0
        [drop] = result.dropped
        assert drop.criterion_id == "C2"
        assert drop.support == 4

    def test_median_permutation_invariant(self):
        rng = np.random.default_rng(31)
        records = [full(f"P{i}", "PRG", 2010, float(v)) for i, v in enumerate(rng.uniform(1, 50, 9))]
        records += [full(f"Q{i}", "OTHER", 2010, float(v)) for i, v in enumerate(rng.uniform(1, 50, 9))]
        base = aggregate(records, 2010)
        shuffled = list(records)
        rng.shuffle(shuffled)
        again = aggregate(shuffled, 2010)
        np.testing.assert_array_equal(base.matrix.values, again.matrix.values)

    def test_other_years_ignored(self):
        records = [full(f"P{i}", "PRG", 2010, 10.0) for i in range(6)]
        records += [full(f"X{i}", "PRG", 2011, 99.0) for i in range(6)]
        records += [full(f"Q{i}", "OTHER", 2010, 20.0 + i) for i in range(6)]
        result = aggregate(records, 2010)
        row = result.matrix.alternatives.index("PRG")
        assert result.matrix.values[row, result.matrix.criterion_ids.index("C1")] == 10.0


class TestSelectWindow:
    def make_matrix(self, m):
        from .conftest import random_matrix

        matrix, _ = random_matrix(np.random.default_rng(m), m=m, n=2)
        return matrix

    def test_threshold_is_thirty_by_default(self):
        yearly = {2009: self.make_matrix(29), 2010: self.make_matrix(30), 2011: self.make_matrix(31)}
        window = select_window(yearly)
        assert sorted(window.matrices) == [2010, 2011]
        assert window.program_counts == {2009: 29, 2010: 30, 2011: 31}

    def test_all_years_retained_when_large(self):
        yearly = {2009: self.make_matrix(35), 2010: self.make_matrix(40)}
        assert sorted(select_window(yearly).matrices) == [2009, 2010]

    def test_missing_matrix_counts_zero(self):
        yearly = {2009: None, 2010: self.make_matrix(31)}
        window = select_window(yearly)
        assert window.program_counts[2009] == 0

    def test_empty_window_raises(self):
        with pytest.raises(EmptyWindowError):
            select_window({2009: self.make_matrix(5)}, min_programs=30)


def ranking(ids_scores):
    ids = tuple(x for x, _ in ids_scores)
    scores = tuple(s for _, s in ids_scores)
    order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
    ranks = [0] * len(ids)
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    m = len(ids)
    return RankingResult(ids, scores, tuple(ranks), tuple((m - p) / (m - 1) for p in ranks))


class TestPercentilePanel:
    def test_single_year_top_program(self):
        panel = percentile_panel({2010: ranking([("A", 0.9), ("B", 0.1)])})
        assert panel.program_summaries[0].program_id == "A"
        assert panel.program_summaries[0].mean_percentile == 1.0

    def test_mean_over_two_years(self):
        yearly = {
            2010: ranking([("A", 0.9), ("B", 0.5), ("C", 0.2), ("D", 0.1), ("E", 0.05), ("F", 0.01)]),
            2011: ranking([("A", 0.2), ("B", 0.5), ("C", 0.9), ("D", 0.1), ("E", 0.05), ("F", 0.01)]),
        }
        panel = percentile_panel(yearly)
        # program D sits fourth of six both years: percentile (6-4)/5 = 0.4
        [d] = [s for s in panel.program_summaries if s.program_id == "D"]
        assert d.mean_percentile == pytest.approx(0.4)
        # program A is first of six in 2010 (percentile 1.0) and third of six
        # in 2011 (percentile 0.6): mean 0.8
        [a] = [s for s in panel.program_summaries if s.program_id == "A"]
        assert a.mean_percentile == pytest.approx(0.8)

    def test_mean_of_percentiles_is_arithmetic(self):
        yearly = {
            2010: ranking([("A", 0.9), ("B", 0.5), ("C", 0.2), ("D", 0.1), ("E", 0.05), ("F", 0.01)]),
            2011: ranking([("A", 0.2), ("B", 0.5), ("C", 0.9), ("D", 0.1), ("E", 0.05), ("F", 0.01)]),
        }
        panel = percentile_panel(yearly)
        for summary in panel.program_summaries:
            pcts = [panel.percentiles[summary.program_id][y] for y in summary.years_present]
            assert summary.mean_percentile == pytest.approx(sum(pcts) / len(pcts))

    def test_program_missing_a_year_averages_present_years(self):
        yearly = {
            2010: ranking([("A", 0.9), ("B", 0.1)]),
            2011: ranking([("B", 0.9), ("C", 0.1)]),
        }
        panel = percentile_panel(yearly)
        [a] = [s for s in panel.program_summaries if s.program_id == "A"]
        assert a.years_present == (2010,)
        assert a.mean_percentile == 1.0

    def test_single_member_family_collapses(self):
        yearly = {2010: ranking([("A", 0.9), ("B", 0.1)])}
        panel = percentile_panel(yearly, {"A": "FAM_X", "B": "FAM_Y"})
        [fx] = [f for f in panel.family_summaries if f.family_id == "FAM_X"]
        assert fx.min == fx.max == fx.mean == 1.0
        assert fx.count == 1

    def test_family_spread(self):
        yearly = {2010: ranking([("A", 0.9), ("B", 0.5), ("C", 0.1)])}
        panel = percentile_panel(yearly, {"A": "F", "B": "F", "C": "G"})
        [f] = [row for row in panel.family_summaries if row.family_id == "F"]
        assert (f.min, f.max, f.count) == (0.5, 1.0, 2)
        assert f.mean == pytest.approx(0.75)


class TestBuildYearly:
    def test_every_graduation_year_present(self, hand_fixture_dir):
        dataset = load_hand_fixture(hand_fixture_dir)
        records = compute_person_criteria(dataset)
        yearly = build_yearly_results(records, min_support=1)
        assert sorted(yearly) == [2010, 2011, 2012]
