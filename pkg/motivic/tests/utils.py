from pathlib import Path

from motivic.lang import load_spec

SPEC_DIR = Path(__file__).resolve().parent.parent / 'specs'


def fixture(name):
    return load_spec(SPEC_DIR / f'{name}.spec')
