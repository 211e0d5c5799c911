import pytest

from rafkit.config import Caps, RunConfig, load_config
from rafkit.errors import ValidationError


def test_defaults():
    config = load_config()
    assert config == RunConfig()
    assert config.caps.af_arguments == 20
    assert config.caps.qbf_expansion_variables == 400
    assert config.qbf_solver is None


def test_yaml_in_working_directory(tmp_path):
    (tmp_path / "raf.yaml").write_text("semantics: adm\ntask: enum\ncaps:\n  af_arguments: 8\n")
    config = load_config()
    assert (config.semantics, config.task) == ("adm", "enum")
    assert config.caps.af_arguments == 8
    assert config.caps.free_variables == 22


def test_explicit_file_wins_over_default(tmp_path):
    (tmp_path / "raf.yaml").write_text("semantics: adm\n")
    other = tmp_path / "other.yaml"
    other.write_text("semantics: pref\n")
    assert load_config(other).semantics == "pref"


def test_environment_caps_override_file(tmp_path, monkeypatch):
    (tmp_path / "raf.yaml").write_text("caps:\n  free_variables: 10\n")
    monkeypatch.setenv("RAF_CAP_FREE_VARIABLES", "5")
    assert load_config().caps.free_variables == 5


def test_environment_cap_must_be_an_integer(monkeypatch):
    monkeypatch.setenv("RAF_CAP_QBF_VARIABLES", "many")
    with pytest.raises(ValidationError) as info:
        load_config()
    assert info.value.path == ("env", "RAF_CAP_QBF_VARIABLES")


def test_dotenv_file(tmp_path, monkeypatch):
    # registers the variable so teardown removes what the .env file sets
    monkeypatch.setenv("RAF_CAP_AF_ARGUMENTS", "1")
    monkeypatch.delenv("RAF_CAP_AF_ARGUMENTS")
    (tmp_path / ".env").write_text("RAF_CAP_AF_ARGUMENTS=6\n")
    assert load_config().caps.af_arguments == 6


def test_solver_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("RAF_QBF_SOLVER", "depqbf")
    assert load_config().qbf_solver == "depqbf"
    (tmp_path / "raf.yaml").write_text("qbf_solver: caqe\n")
    assert load_config().qbf_solver == "caqe"


def test_unknown_key(tmp_path):
    (tmp_path / "raf.yaml").write_text("colour: blue\n")
    with pytest.raises(ValidationError, match="unknown configuration key") as info:
        load_config()
    assert info.value.path == ("colour",)


def test_unknown_cap(tmp_path):
    (tmp_path / "raf.yaml").write_text("caps:\n  atoms: 3\n")
    with pytest.raises(ValidationError, match="unknown cap 'atoms'"):
        load_config()


def test_file_must_hold_a_mapping(tmp_path):
    (tmp_path / "raf.yaml").write_text("- stab\n- adm\n")
    with pytest.raises(ValidationError):
        load_config()


@pytest.mark.parametrize("value", [0, -3, True, "4"])
def test_caps_must_be_positive_integers(value):
    with pytest.raises(ValidationError):
        Caps(af_arguments=value)


def test_negative_seed(tmp_path):
    (tmp_path / "raf.yaml").write_text("seed: -1\n")
    with pytest.raises(ValidationError):
        load_config()


def test_overrides():
    config = load_config(semantics="pref", task=None, caps={"af_arguments": 4})
    assert config.semantics == "pref"
    assert config.task == "cons"
    assert config.caps.af_arguments == 4
    assert config.caps.free_variables == 22


def test_caps_override_object():
    config = load_config(caps=Caps(qbf_variables=3))
    assert config.caps == Caps(qbf_variables=3)
