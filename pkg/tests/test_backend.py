import os
import subprocess
import sys

import harmdenom


def _backend_with(env_value):
    env = dict(os.environ)
    env.pop("HARMDENOM_PURE", None)
    if env_value is not None:
        env["HARMDENOM_PURE"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "import harmdenom; print(harmdenom.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    return out.stdout.strip()


def test_pure_flag_forces_fallback():
    assert _backend_with("1") == "python"


def test_default_prefers_extension():
    try:
        import harmdenom._kernels  # noqa: F401
    except ImportError:
        expected = "python"
    else:
        expected = "cython"
    assert _backend_with(None) == expected
    assert harmdenom.BACKEND in ("python", "cython")
