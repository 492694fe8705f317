#!/usr/bin/env python3
"""
Script to run every closed-form example and print a summary table
"""
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from elastic_match.config import settings  # noqa: E402
from elastic_match.errors import ElasticMatchError  # noqa: E402
from elastic_match.logger import setup_logger  # noqa: E402
from elastic_match.pipeline.examples import EXAMPLES  # noqa: E402
from elastic_match.pipeline.runner import MatchPipeline  # noqa: E402

logger = setup_logger(__name__)


def main():
    """Run all demos into settings.output_dir"""
    print("=" * 80)
    print("Elastic matching examples")
    print("=" * 80)

    pipeline = MatchPipeline()
    rows = []
    try:
        for example_id in EXAMPLES:
            report = pipeline.demo(example_id, Path(settings.output_dir) / example_id)
            rows.append(report)
        compare = pipeline.compare_dp_standin()
    except ElasticMatchError as e:
        logger.error(f"Demo failed: {e}")
        print(f"\nERROR: {e}")
        sys.exit(1)

    print(f"\n{'id':<6}{'before':>10}{'after':>10}{'caption before':>16}{'caption after':>15}")
    for r in rows:
        print(f"{r.id:<6}{r.before:>10.4f}{r.after:>10.4f}{r.caption_before:>16.4f}{r.caption_after:>15.4f}")
    print(f"\n{compare.label}")
    print(f"before {compare.before:.4f}, exact {compare.exact:.4f}, DP {compare.dp:.4f}")
    print(f"\nOutputs in {settings.output_dir}")
    print("=" * 80)


if __name__ == "__main__":
    main()
