"""
This schema represents all known key/value pairs for a sweep config file.
"""
import yaml
from strictyaml import Float, Int, Map, Optional, Seq, Str
import strictyaml


class ConfigError(ValueError):
    pass


SWEEP_SCHEMA = Map(
    {
        "code": Str(),
        Optional("schemes"): Seq(Str()),
        Optional("hybrids"): Seq(Str()),
        Optional("snrDb"): Seq(Float()),
        Optional("sigma"): Seq(Float()),
        Optional("seed"): Int(),
        Optional("minErrors"): Int(),
        Optional("maxFrames"): Int(),
        Optional("batchSize"): Int(),
        Optional("workers"): Int(),
        Optional("imax"): Int(),
        Optional("out"): Str(),
    }
)


def load_config(text: str) -> dict:
    # StrictYAML checks the shape of the file; the loaded values are then
    # used as a plain dict.
    try:
        strictyaml.load(text, SWEEP_SCHEMA)
    except Exception as e:
        raise ConfigError(f"Could not validate configuration: {e}") from e
    return yaml.safe_load(text)
