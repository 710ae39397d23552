import os

import pytest
import yaml
from addict import Dict

from tests import utils


@pytest.fixture(scope="function")
def write_config(tmpdir):
    """
    Write a resource config with ``output_dir`` moved under ``tmpdir``; extra
    keyword arguments update the parsed document first. Returns the path.
    """

    def write(resource, **updates):
        data = Dict(utils.read_yaml(os.path.join("resources", resource)))
        data.update(updates)
        data.output_dir = str(tmpdir.join("runs", os.path.splitext(resource)[0]))
        path = str(tmpdir.join(resource))
        with open(path, "w") as f:
            yaml.safe_dump(data.to_dict(), f)
        return path

    return write
