import json

import pytest

import documents
from cli import main
from completeness import Mode, is_minimal_complete


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def q4_file(tmp_path):
    path = tmp_path / 'q4.txt'
    path.write_text("n=4 mode=inversion\n2 3 1 4\n2 4 1 3\n1 3 2 4\n1 4 2 3\n")
    return path


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestCounts:
    def test_gamma(self, capsys):
        assert run(capsys, 'gamma', 6, '--mode', 'inversion')[:2] == (0, "9\n")
        assert run(capsys, 'gamma', 3, '--mode', 'pair')[:2] == (0, "3\n")

    def test_count(self, capsys):
        assert run(capsys, 'count', 5, '--what', 'pstar')[:2] == (0, "1280\n")
        assert run(capsys, 'count', 5, '--what', 'qstar')[:2] == (0, "128\n")
        assert run(capsys, 'count', 8, '--what', 'family', '--c', 4)[:2] == (0, "36\n")

    def test_count_table(self, capsys):
        code, out, _ = run(capsys, 'count', 4, '--what', 'table')
        assert code == 0
        assert out.splitlines() == ['2 1 2 1 1', '3 2 3 3 2', '4 4 4 1 12']

    def test_family_needs_c(self, capsys):
        code, _, err = run(capsys, 'count', 8, '--what', 'family')
        assert code == 1
        assert 'c_given' in err

    def test_invalid_n(self, capsys):
        code, _, err = run(capsys, 'gamma', 1)
        assert code == 1
        assert 'valid_size' in err


class TestVerify:
    def test_unique_q4_is_minimal(self, capsys, q4_file):
        code, out, _ = run(capsys, 'verify', q4_file, '--minimal')
        assert code == 0
        assert out == "minimally inversion-complete: 4 permutations\n"

    def test_incomplete(self, capsys, tmp_path):
        path = write(tmp_path, 'slip.txt', "n=3 mode=inversion\n2 1 3\n1 2 3\n")
        code, out, _ = run(capsys, 'verify', path)
        assert code == 1
        assert "uncovered (3,1)\nuncovered (3,2)\n" in out

    def test_redundant(self, capsys, tmp_path):
        path = write(tmp_path, 'slip.txt', "n=3 mode=inversion\n3 2 1\n2 1 3\n")
        assert run(capsys, 'verify', path)[0] == 0
        code, out, err = run(capsys, 'verify', path, '--minimal')
        assert code == 1
        assert "redundant 213\n" in out
        assert 'is_minimal_complete' in err

    def test_malformed_input(self, capsys, tmp_path):
        path = write(tmp_path, 'bad.txt', "n=3 mode=pair\n1 2 x\n")
        code, out, err = run(capsys, 'verify', path)
        assert code == 2
        assert out == ''
        assert f"{path}:2:5:" in err

    def test_unwritable_json_metadata(self, capsys, tmp_path):
        path = write(tmp_path, 'meta.json',
                     '{"n": 2, "mode": "pair", "perms": [[1, 2], [2, 1]], '
                     '"metadata": {"note": "hello world"}}')
        code, out, err = run(capsys, 'verify', path)
        assert code == 2
        assert out == ''
        assert f"{path}:1:1:" in err

    def test_stdin(self, capsys, monkeypatch, q4_file):
        import io
        monkeypatch.setattr('sys.stdin', io.StringIO(q4_file.read_text()))
        assert run(capsys, 'verify', '-', '--minimal')[0] == 0


class TestGenerate:
    @pytest.mark.parametrize('args', [
        ('generate', 7, '--mode', 'inversion', '--seed', 3),
        ('generate', 7, '--mode', 'pair', '--seed', 3),
        ('generate', 6, '--mode', 'pair', '--seed', 3, '--orbit'),
        ('generate', 5, '--mode', 'pair', '--seed', 3, '--relabel', '35142'),
        ('generate', 6, '--mode', 'pair', '--seed', 3, '--x', '2,4,6'),
        ('generate', 4, '--mode', 'pair', '--seed', 0, '--format', 'json'),
        ('generate', 2, '--mode', 'inversion', '--seed', 0),
    ])
    def test_generate_then_verify(self, capsys, tmp_path, args):
        code, out, _ = run(capsys, *args)
        assert code == 0
        path = write(tmp_path, 'set.txt', out)
        assert run(capsys, 'verify', path, '--minimal')[0] == 0

    def test_identical_arguments_identical_output(self, capsys):
        first = run(capsys, 'generate', 9, '--mode', 'pair', '--seed', 12345)[1]
        second = run(capsys, 'generate', 9, '--mode', 'pair', '--seed', 12345)[1]
        assert first == second
        assert first != run(capsys, 'generate', 9, '--mode', 'pair', '--seed', 12346)[1]

    def test_metadata(self, capsys):
        out = run(capsys, 'generate', 6, '--seed', 8, '--quiet')[1]
        doc = documents.parse(out)
        assert doc.metadata == {'seed': 8, 'generator': 'sample_Q_star', 'c': 3}

    def test_quiet_silences_status(self, capsys):
        assert run(capsys, 'generate', 5, '--seed', 1, '--quiet')[2] == ''
        assert run(capsys, 'generate', 5, '--seed', 1)[2] != ''

    def test_variant_needs_pair_mode(self, capsys):
        code, _, err = run(capsys, 'generate', 5, '--seed', 1, '--orbit')
        assert code == 1
        assert 'mode_is_pair' in err

    @pytest.mark.parametrize('argv', [
        ('generate', 5),
        ('generate', 5, '--seed', -1),
        ('generate', 5, '--seed', 1, '--orbit', '--x', '1,2'),
        ('generate', 5, '--mode', 'pair', '--seed', 1, '--x', '1,x'),
        ('gamma',),
        ('frobnicate',),
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestEnumerate:
    def test_text_stream(self, capsys):
        code, out, _ = run(capsys, 'enumerate', 4, '--mode', 'pair')
        assert code == 0
        docs = [documents.parse_text(block) for block in out.split('\n\n')]
        assert len(docs) == 12
        assert [d.metadata['index'] for d in docs] == list(range(12))
        assert all(is_minimal_complete(d.to_permset()) for d in docs)

    def test_json_lines(self, capsys):
        code, out, _ = run(capsys, 'enumerate', 5, '--limit', 7, '--format', 'json')
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 7
        assert all(json.loads(line)['mode'] == 'inversion' for line in lines)

    def test_refuses_huge_enumeration(self, capsys):
        code, out, err = run(capsys, 'enumerate', 7)
        assert code == 1
        assert out == ''
        assert 'within_bounds' in err
        assert run(capsys, 'enumerate', 7, '--limit', 2, '--quiet')[0] == 0


class TestOracle:
    def test_report_json(self, capsys):
        code, out, _ = run(capsys, 'oracle', 3, '--mode', 'inversion', '--quiet')
        assert code == 0
        data = json.loads(out)
        assert data['max_size_found'] == 2
        assert data['witness_count'] == 3
        assert data['witness_sets'][0] == [[1, 3, 2], [2, 3, 1]]
        assert 'elapsed_seconds' not in data

    def test_timing_flag(self, capsys):
        out = run(capsys, 'oracle', 2, '--mode', 'pair', '--timing', '--quiet')[1]
        assert 'elapsed_seconds' in json.loads(out)

    def test_out_of_range(self, capsys):
        assert run(capsys, 'oracle', 5, '--quiet')[0] == 1


class TestGraph:
    def test_inversion_graph(self, capsys, q4_file):
        code, out, _ = run(capsys, 'graph', q4_file, '--strategy', 'lex_min', '--format', 'dot')
        assert code == 0
        assert out.startswith("graph selection {\n")
        assert '    1 -- 3 [label="2314 (3,1)"];' in out
        assert out.endswith("}\n")

    def test_pair_digraph(self, capsys, tmp_path, q4_file):
        path = write(tmp_path, 'p4.txt', q4_file.read_text().replace('inversion', 'pair'))
        out = run(capsys, 'graph', path)[1]
        assert out.startswith("digraph selection {\n")
        assert '    3 -> 1 [label="2314 (3,1)"];' in out

    def test_all_selections(self, capsys, tmp_path):
        path = write(tmp_path, 's.txt', "n=3 mode=inversion\n2 1 3\n3 1 2\n")
        out = run(capsys, 'graph', path, '--strategy', 'all')[1]
        assert out.count("graph selection_") == 2

    def test_not_minimal(self, capsys, tmp_path):
        path = write(tmp_path, 's.txt', "n=3 mode=inversion\n3 2 1\n2 1 3\n")
        code, _, err = run(capsys, 'graph', path)
        assert code == 1
        assert 'is_minimal_complete' in err


class TestBijection:
    def test_phi_round_trip(self, capsys, tmp_path):
        p_text = run(capsys, 'generate', 6, '--mode', 'pair', '--seed', 21, '--x', '1,5,6')[1]
        p_path = write(tmp_path, 'p.txt', p_text)

        code, q_text, _ = run(capsys, 'phi', p_path)
        assert code == 0
        q_doc = documents.parse(q_text)
        assert q_doc.mode is Mode.INVERSION
        assert q_doc.metadata == {'x': '1,5,6'}

        q_path = write(tmp_path, 'q.txt', q_text)
        code, back, _ = run(capsys, 'phi-inverse', '--x', '1,5,6', '--q', q_path, '--format', 'json')
        assert code == 0
        assert documents.parse(back).to_permset() == documents.parse(p_text).to_permset()

    def test_phi_needs_n5(self, capsys, q4_file):
        code, _, err = run(capsys, 'phi', q4_file)
        assert code == 1
        assert 'n_at_least_5' in err

    def test_phi_inverse_checks_q(self, capsys, tmp_path):
        path = write(tmp_path, 'q.txt', "n=5 mode=inversion\n5 4 3 2 1\n")
        code, _, err = run(capsys, 'phi-inverse', '--x', '1,2', '--q', path)
        assert code == 1
        assert 'in_Q_star' in err
