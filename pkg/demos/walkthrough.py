"""Run every check and print the traceability report.

    python demos/walkthrough.py [bundle.json]
"""

import sys

from fpp_certifier import certify

out = sys.argv[1] if len(sys.argv) > 1 else None
bundle = certify.verify_all(out)
sys.stdout.write(certify.report(bundle))
sys.exit(certify.exit_code(bundle))
