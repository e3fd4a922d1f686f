import io
import json
import os

import pytest

from varbicolib.cli import main, run
from varbicolib.dsl import parse_session
from varbicolib.render import render_text
from varbicolib.session import example_text, list_examples, load_example

GOLDEN = os.path.join(os.path.dirname(__file__), 'golden')


@pytest.mark.parametrize('name, code', [
    ('oscillator', 0),
    ('wave', 0),
    ('constrained', 0),
    ('heat', 1),
])
def test_golden_sessions(name, code):
    out = io.StringIO()
    assert run(load_example(name), out=out) == code
    with open(os.path.join(GOLDEN, name + '.out'), encoding='utf-8') as f:
        assert out.getvalue() == f.read()


@pytest.mark.parametrize('name', ['oscillator', 'wave', 'constrained'])
def test_golden_outputs_parse_back(name):
    session = load_example(name)
    bundle = 'bundle ({}) ({})\n'.format(' '.join(session.signature.indep),
                                         ' '.join(session.signature.dep))
    with open(os.path.join(GOLDEN, name + '.out'), encoding='utf-8') as f:
        lines = [line for line in f.read().splitlines() if not line.startswith('#')]
    for line in lines:
        _, text = line.split(' = ', 1)
        if text in ('true', 'false', 'pass', 'fail', 'exact'):
            continue
        parsed = parse_session(bundle + f'def X : form = {text}')
        assert render_text(parsed['X']) == text, line


def test_malformed_file(caplog):
    path = os.path.join(GOLDEN, 'malformed.vbc')
    assert main([path]) == 2
    assert 'line 2' in caplog.text


def test_missing_file(tmp_path):
    assert main([str(tmp_path / 'none.vbc')]) == 2


def test_example_flag(capsys):
    assert main(['--example', 'heat']) == 1
    assert capsys.readouterr().out.startswith('# helmholtz HEAT\n')


def test_unknown_example(caplog):
    assert main(['--example', 'pendulum']) == 2
    assert 'oscillator' in caplog.text


def test_list_examples(capsys):
    assert main(['--list-examples']) == 0
    assert capsys.readouterr().out.split() == list_examples()
    assert list_examples() == ['constrained', 'heat', 'oscillator', 'wave']


def test_json_output():
    out = io.StringIO()
    assert run(load_example('oscillator'), fmt='json', out=out) == 0
    data = json.loads(out.getvalue())
    assert data['schema'] == 'varbico-1'
    reconstruct = data['commands'][1]
    assert reconstruct['command'] == 'reconstruct osc W'
    assert reconstruct['status'] == 'ok'
    assert reconstruct['results']['omega']['grading'] == [0, 2]
    assert data['commands'][0]['results']['compatible'] is True


def test_latex_output():
    out = io.StringIO()
    run(load_example('oscillator'), fmt='latex', out=out)
    assert '% reconstruct osc W' in out.getvalue()
    assert '\\frac{1}{2}' in out.getvalue()


def test_failed_checks():
    text = '''bundle (t) (u)
def W : form = jet(u;t) * dv(jet(u;t)) /\\ dv(u)
def S : src = jet(u;t) * dv(u) /\\ dx(t)
sys osc { jet(u;t,t) -> -u }
cmd checkomega osc W
cmd reconstruct osc W
cmd vainberg S
'''
    out = io.StringIO()
    assert run(parse_session(text), out=out) == 1
    lines = out.getvalue().splitlines()
    assert 'compatible = false' in lines
    assert lines[lines.index('# vainberg S') + 1] == 'helmholtz = fail'


def test_rejected_system_is_input_error():
    text = '''bundle (x y) (u)
def W : form = dx(x) /\\ dv(u) /\\ dv(jet(u;y,y))
sys bad { jet(u;x) -> u, jet(u;y) -> x*u }
cmd checkomega bad W
'''
    assert run(parse_session(text), out=io.StringIO()) == 2


def test_containment_failure_shows_witness():
    text = '''bundle (t) (q1 q2 lam)
def L : lag = (1/2*jet(q1;t)^2 + 1/2*jet(q2;t)^2 + lam*(q1 - q2)) * dx(t)
def L3 : lag = L + (q1 - q2) * dx(t)
sys EL { jet(q1;t,t) -> 0, q2 -> q1, lam -> 0 }
cmd compare L L3 EL
'''
    out = io.StringIO()
    assert run(parse_session(text), out=out) == 1
    assert out.getvalue().splitlines() == [
        '# compare L L3 EL',
        'el_contained = fail',
        'witness[q1] = 1',
        'omega_match = exact',
    ]


def test_bounds_flag(tmp_path):
    path = tmp_path / 'session.vbc'
    path.write_text(example_text('constrained'))
    assert main(['--bounds', '1,1', '--depth', '3', str(path)]) == 0
    with pytest.raises(SystemExit):
        main(['--bounds', 'x', str(path)])


def test_undecoded_file_is_input_error(tmp_path, caplog):
    path = tmp_path / 'session.vbc'
    path.write_bytes(b'bundle (t) (u)\n\xff\xfe\n')
    assert main([str(path)]) == 2
    assert 'utf-8' in caplog.text


BOUNDARY_SHIFT = '''bundle (t x) (u)
def L : lag = 1/2*(jet(u;t)^2 - jet(u;x)^2) * dx(t) /\\ dx(x)
def L2 : lag = L - jet(u;t)*jet(u;t,x) * dx(t) /\\ dx(x)
sys wave { jet(u;t,t) -> jet(u;x,x) }
cmd compare L L2 wave
'''


def test_compare_undecided_within_bounds(tmp_path, capsys):
    path = tmp_path / 'session.vbc'
    path.write_text(BOUNDARY_SHIFT)
    assert main(['--bounds', '0,0', str(path)]) == 3
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ['# compare L L2 wave', 'el_contained = pass',
                         'omega_match = undecided_within_bounds']
    assert lines[3].startswith('delta = ')
    assert main([str(path)]) == 0
    assert 'omega_match = exact_up_to_dh' in capsys.readouterr().out.splitlines()
