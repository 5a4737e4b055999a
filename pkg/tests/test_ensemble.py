from pathlib import Path

import numpy as np
import pytest

from src.qnlwe.ensemble import (
    Ensemble,
    StateLabel,
    cyclic_ensemble,
    ensemble_from_process,
    find_nonorthogonal_pair,
    format_ensemble,
    game_ensemble,
    is_orthonormal_exact,
    local_obstruction_report,
    parse_ensemble,
    process_from_ensemble,
    read_ensemble,
    shift,
)
from src.qnlwe.errors import InputError, ParseError
from src.qnlwe.process import ProcessTable, afbw, has_no_global_past, is_classical_process

DATA_DIR = Path(__file__).parent.parent / "data"

SHIFT_STATES = {"000", "111", "+01", "-01", "1+0", "1-0", "01+", "01-"}


def _computational(n: int) -> Ensemble:
    return ensemble_from_process(ProcessTable.constant(n, 0))


class TestStateLabel:
    def test_views(self) -> None:
        label = StateLabel("+01")
        assert label.n == 3
        assert label.xbits == 0b001
        assert label.basisbits == 0b100

    def test_minus(self) -> None:
        label = StateLabel("-1+0")
        assert label.xbits == 0b1100
        assert label.basisbits == 0b1010

    def test_unicode_minus(self) -> None:
        assert StateLabel.parse("−01") == StateLabel("-01")

    def test_reconstruct_from_bits(self) -> None:
        for chars in ("0+-1", "----", "0000", "+1-0"):
            label = StateLabel(chars)
            assert StateLabel.from_bits(label.basisbits, label.xbits, 4) == label

    def test_invalid(self) -> None:
        with pytest.raises(InputError):
            StateLabel("0x1")
        with pytest.raises(InputError):
            StateLabel("")
        with pytest.raises(InputError):
            StateLabel.from_bits(4, 0, 2)


class TestEnsemble:
    def test_size(self) -> None:
        with pytest.raises(InputError):
            Ensemble.parse_labels(["0", "1", "+"])
        with pytest.raises(InputError):
            Ensemble.parse_labels(["0", "11"])

    def test_sorted(self) -> None:
        ensemble = Ensemble.parse_labels(["-", "0"]).sorted()
        assert [str(s) for s in ensemble.states] == ["0", "-"]

    def test_same_states(self) -> None:
        assert Ensemble.parse_labels(["0", "1"]).same_states(Ensemble.parse_labels(["1", "0"]))
        assert not Ensemble.parse_labels(["0", "1"]).same_states(Ensemble.parse_labels(["+", "-"]))


class TestConstruction:
    def test_afbw_gives_shift(self) -> None:
        ensemble = ensemble_from_process(afbw())
        assert {str(s) for s in ensemble.states} == SHIFT_STATES
        assert ensemble.same_states(shift())

    def test_state_index_is_x(self) -> None:
        omega = afbw()
        for x, label in enumerate(ensemble_from_process(omega).states):
            assert label.xbits == x
            assert label.basisbits == omega(x)

    def test_all_zero_gives_computational_basis(self) -> None:
        ensemble = _computational(3)
        assert [str(s) for s in ensemble.states] == [format(x, "03b") for x in range(8)]

    def test_shift_gives_afbw(self) -> None:
        omega = process_from_ensemble(shift())
        assert omega == afbw()
        assert omega(0b010) == 0b001

    def test_computational_basis_gives_all_zero(self) -> None:
        assert process_from_ensemble(_computational(2)) == ProcessTable.constant(2, 0)

    def test_cyclic_round_trip(self) -> None:
        omega = process_from_ensemble(cyclic_ensemble())
        assert ensemble_from_process(omega).same_states(cyclic_ensemble())
        assert process_from_ensemble(ensemble_from_process(omega)) == omega

    def test_game_process(self) -> None:
        omega = process_from_ensemble(game_ensemble())
        assert omega.n == 4
        assert is_classical_process(omega)
        assert has_no_global_past(omega)

    def test_colliding_states_are_named(self) -> None:
        typo = Ensemble.parse_labels(["000", "+01", "01+", "01-", "1+0", "001", "1-0", "111"])
        with pytest.raises(InputError, match=r'"\+01" and "001"'):
            process_from_ensemble(typo)


class TestOrthonormality:
    def test_fixtures(self) -> None:
        for ensemble in (shift(), game_ensemble(), cyclic_ensemble()):
            assert is_orthonormal_exact(ensemble)
            assert find_nonorthogonal_pair(ensemble) is None

    def test_zero_and_plus(self) -> None:
        ensemble = Ensemble.parse_labels(["0", "+"])
        assert not is_orthonormal_exact(ensemble)
        assert find_nonorthogonal_pair(ensemble) == (0, 1)

    def test_first_pair(self) -> None:
        typo = Ensemble.parse_labels(["000", "+01", "01+", "01-", "1+0", "001", "1-0", "111"])
        assert find_nonorthogonal_pair(typo) == (1, 5)

    def test_coincides_with_process_property_n2(self) -> None:
        processes = 0
        for row in np.ndindex(4, 4, 4, 4):
            omega = ProcessTable(2, tuple(row))
            orthonormal = is_orthonormal_exact(ensemble_from_process(omega))
            assert orthonormal == is_classical_process(omega)
            processes += orthonormal
        assert processes == 12

    def test_coincides_with_process_property_n3(self) -> None:
        rng = np.random.default_rng(4)
        for row in rng.integers(0, 8, size=(300, 8)):
            omega = ProcessTable.from_array(3, row)
            assert is_orthonormal_exact(ensemble_from_process(omega)) == is_classical_process(omega)


class TestLocalObstruction:
    def test_shift(self) -> None:
        assert local_obstruction_report(shift()) == (True, True, True)

    def test_computational_basis(self) -> None:
        assert local_obstruction_report(_computational(3)) == (False, False, False)

    def test_four_party_fixtures(self) -> None:
        assert all(local_obstruction_report(game_ensemble()))
        assert all(local_obstruction_report(cyclic_ensemble()))

    def test_single_hadamard_party(self) -> None:
        ensemble = Ensemble.parse_labels(["0+", "0-", "10", "11"])
        assert local_obstruction_report(ensemble) == (False, True)


class TestShift:
    def test_contains(self) -> None:
        assert StateLabel("01+") in shift().as_set()

    def test_equals_afbw_ensemble(self) -> None:
        assert shift().as_set() == ensemble_from_process(afbw()).as_set()

    def test_orthonormal(self) -> None:
        assert is_orthonormal_exact(shift())


class TestEnsembleFileFormat:
    @pytest.mark.parametrize(
        "name, expected",
        [("shift.ens", shift()), ("game.ens", game_ensemble()), ("cyclic.ens", cyclic_ensemble())],
    )
    def test_data_files(self, name: str, expected: Ensemble) -> None:
        assert read_ensemble(DATA_DIR / name).same_states(expected)

    def test_shift_file_is_in_x_order(self) -> None:
        assert read_ensemble(DATA_DIR / "shift.ens") == ensemble_from_process(afbw())

    def test_format(self) -> None:
        text = format_ensemble(Ensemble.parse_labels(["0", "-"]), ["seed: 0"])
        assert text == "# seed: 0\nensemble n=1\n0\n-\n"

    def test_unicode_minus_is_written_as_ascii(self) -> None:
        ensemble = parse_ensemble("ensemble n=1\n+\n−\n")
        assert format_ensemble(ensemble).splitlines()[-1] == "-"

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", None),
            ("process n=1\n0\n1\n", 1),
            ("ensemble n=1\n0\n2\n", 3),
            ("ensemble n=2\n00\n0+\n1\n11\n", 4),
            ("ensemble n=1\n0\n1\n+\n", 4),
            ("ensemble n=2\n00\n01\n", 3),
        ],
    )
    def test_errors(self, text: str, line: int | None) -> None:
        with pytest.raises(ParseError) as info:
            parse_ensemble(text)
        assert info.value.line == line

    def test_read_keeps_the_line(self, tmp_path: Path) -> None:
        path = tmp_path / "short.ens"
        path.write_text("ensemble n=2\n00\n01\n", encoding="utf-8")
        with pytest.raises(ParseError, match="short.ens: line 3") as info:
            read_ensemble(path)
        assert info.value.line == 3
