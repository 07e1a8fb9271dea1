"""Run the Django test suites under pytest.

Mirrors what `python manage.py test` does around the tests: load the
project settings, set up the test environment and create the test
databases for the session.
"""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "omegapaste.settings")

_runner = None
_old_config = None


def pytest_configure(config):
    global _runner, _old_config
    django.setup()
    from django.test.runner import DiscoverRunner

    _runner = DiscoverRunner(verbosity=0, interactive=False)
    _runner.setup_test_environment()
    _old_config = _runner.setup_databases()


def pytest_unconfigure(config):
    if _runner is not None:
        _runner.teardown_databases(_old_config)
        _runner.teardown_test_environment()
