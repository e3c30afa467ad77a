"""Acceptance suite. Run alone with ``pytest tests/test_acceptance.py``; the
terminal summary prints one PASS/FAIL line per criterion."""

import subprocess
import sys
import time

import pytest

from ducksyntax.composer import OrderViolation, Token, fulfill, open_contract
from ducksyntax.lexicon import dump_lexicon, load_lexicon, validate_lexicon
from ducksyntax.parser import UnfulfilledContract, facilitation_metric, parse, parse_text
from ducksyntax.typecore import NoImplementingUse, cast
from oracles import brute_force_cast

criterion = pytest.mark.criterion


def root_label(objects):
    if len(objects) == 1:
        return objects[0].out
    typed = [o for o in objects if o.interface is not None]
    assert len(typed) == 1, [o.describe() for o in objects]
    return typed[0].out


def cli(*args):
    return subprocess.run([sys.executable, "-m", "ducksyntax", *args], capture_output=True, check=False)


@criterion(1, "golden examples: root labels")
def test_1_golden_labels(lex, golden, tmp_path):
    assert len(golden) == 16
    for sentence, label in golden:
        assert root_label(parse_text(sentence, lex).objects) == label, sentence
    corpus = tmp_path / "golden.txt"
    corpus.write_text("".join(s + "\n" for s, _ in golden), encoding="utf-8")
    proc = cli("parse", "--lexicon", "@bundled", str(corpus))
    assert proc.returncode == 0, proc.stderr
    assert len(proc.stdout.decode().splitlines()) == 16


@criterion(2, "order rigidity over the lexicon product")
def test_2_order_rigidity(lex):
    checked = 0
    for fw_form, specs in lex.fw.items():
        for cw_form in list(lex.cw) + list(lex.sat):
            try:
                objects = parse([Token(cw_form, 0), Token(fw_form, 1)], lex).objects
            except UnfulfilledContract:
                objects = []
            for root in objects:
                for obj in root.walk():
                    assert obj.interface is None or obj.interface.token.index != 1, (cw_form, fw_form)
            # the same pair assembled directly is refused too
            for spec in specs:
                try:
                    result = cast(lex.cw.get(cw_form) or lex.sat[cw_form], spec)
                except NoImplementingUse:
                    continue
                with pytest.raises(OrderViolation):
                    fulfill(open_contract(spec, Token(fw_form, 1)), Token(cw_form, 0), result, lex)
            checked += 1
    assert checked == len(lex.fw) * (len(lex.cw) + len(lex.sat))


@criterion(3, "cast agrees with the brute-force oracle")
def test_3_oracle_equivalence(lex):
    disagreements = []
    for entry in list(lex.cw.values()) + list(lex.sat.values()):
        for spec in lex.interfaces():
            expected = brute_force_cast(entry, spec)
            try:
                got = cast(entry, spec).chosen_use
            except NoImplementingUse:
                got = None
            if got != (expected and expected[0]):
                disagreements.append((entry.form, str(spec), got, expected))
    assert disagreements == []


HETEROSEMES = {
    "kiss": ("the kiss", "will kiss"), "talk": ("the talk", "will talk"),
    "chase": ("the chase", "will chase"), "green": ("the green", "very green"),
    "sick": ("the sick", "very sick"), "poor": ("the poor", "very poor"),
    "wet": ("is wet", "will wet"), "dry": ("is dry", "will dry"),
    "dirty": ("is dirty", "will dirty"),
}


@criterion(4, "heterosemes cast to two uses")
def test_4_heterosemy(lex):
    for word, contexts in HETEROSEMES.items():
        uses = []
        for text in contexts:
            (obj,) = parse_text(text, lex).objects
            expected = brute_force_cast(lex.cw[word], obj.interface.spec)
            assert obj.implementation.use == expected[0], text
            uses.append(expected[0])
        assert len(set(uses)) == 2, (word, uses)


@criterion(5, "copula takes any predicate term but not a finite verb")
def test_5_copula(lex):
    for text, impl in [("is happy", "adjective"), ("is a doctor", "DP"), ("is running", "participle")]:
        (vp,) = parse_text(text, lex).objects
        assert vp.out == "VP" and vp.interface.token.text == "is"
        got = vp.implementation.use if hasattr(vp.implementation, "use") else vp.implementation.out
        assert got == impl, text
    copula = lex.fw["is"][0]
    with pytest.raises(NoImplementingUse):
        cast(lex.cw["runs"], copula)
    with pytest.raises(UnfulfilledContract) as info:
        parse_text("is runs", lex)
    assert info.value.spec == copula


@criterion(6, "type depends on the interface alone")
def test_6_type_determinism(lex):
    for spec in lex.interfaces():
        results = set()
        for entry in list(lex.cw.values()) + list(lex.sat.values()):
            try:
                result = cast(entry, spec)
            except NoImplementingUse:
                continue
            obj = fulfill(open_contract(spec, Token(spec.form, 0)), Token(entry.form, 1), result, lex)
            results.add((obj.out, obj.features))
        assert len(results) <= 1, (str(spec), results)


@criterion(7, "function words reduce unguided integrations")
def test_7_facilitation(lex, pairs):
    assert len(pairs) >= 5
    for kind, with_fw, without_fw in pairs:
        a = facilitation_metric(parse_text(with_fw, lex).metrics)
        b = facilitation_metric(parse_text(without_fw, lex).metrics)
        assert a <= b, (with_fw, a, b)
        if kind == "complementizer":
            assert a < b, (with_fw, a, b)


@criterion(8, "validation of interface entries")
def test_8_protected_variation(lex):
    assert validate_lexicon(lex).errors == []
    base = dump_lexicon(lex)

    synonym = load_lexicon(base + "fw thee out=DP requires=accept_definiteness confers=definite\n")
    report = validate_lexicon(synonym)
    assert len(report.of_kind("SynonymWarning")) == 1
    assert report.errors == []

    empty = load_lexicon(base + "fw zilch out=DP requires=\n", lenient=True)
    assert len(validate_lexicon(empty).errors) == 1


@criterion(9, "lexicon round trip and byte-stable CLI output")
def test_9_determinism(lex, golden, tmp_path):
    again = load_lexicon(dump_lexicon(lex))
    assert again == lex
    assert dump_lexicon(again) == dump_lexicon(lex)

    corpus = tmp_path / "golden.txt"
    corpus.write_text("".join(s + "\n" for s, _ in golden), encoding="utf-8")
    for command in (["parse"], ["parse", "--format", "tabular"], ["trace"], ["stats"]):
        first = cli(*command, "--lexicon", "@bundled", str(corpus))
        second = cli(*command, "--lexicon", "@bundled", str(corpus))
        assert first.returncode == 0 and first.stdout
        assert first.stdout == second.stdout, command


def test_criteria_run_fast(lex, golden, pairs):
    start = time.perf_counter()
    for sentence, _ in golden:
        parse_text(sentence, lex)
    for _, a, b in pairs:
        parse_text(a, lex)
        parse_text(b, lex)
    assert time.perf_counter() - start < 1.0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
