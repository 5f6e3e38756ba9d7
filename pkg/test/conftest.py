# -*- coding: utf-8 -*-


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite the figure bundles under test/golden from the current code",
    )
