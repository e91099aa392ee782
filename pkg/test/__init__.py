"""Test package: sqlite database in a temporary directory and hypothesis profiles."""
import os
import tempfile

from hypothesis import HealthCheck, settings

# Set test environment before any test module imports db
os.environ["DB_BACKEND"] = "sqlite"
os.environ.setdefault("DEPALLOC_SQLITE_PATH", os.path.join(tempfile.mkdtemp(prefix="depalloc-test-"), "test.db"))

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))
