import pytest

from varbicolib.session import example_text, list_examples, load_example


def test_list_examples():
    assert set(list_examples()) >= {'oscillator', 'wave', 'constrained', 'heat'}


@pytest.mark.parametrize('name', ['oscillator', 'wave', 'constrained', 'heat'])
def test_examples_parse(name):
    session = load_example(name)
    assert session.commands
    assert example_text(name).lstrip().startswith('#')


def test_unknown_example():
    with pytest.raises(KeyError, match='oscillator'):
        load_example('pendulum')
