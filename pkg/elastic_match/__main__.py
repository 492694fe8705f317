"""Run the command-line interface with python -m elastic_match"""
import sys

from elastic_match.cli import main

sys.exit(main())
