"""
Auditing the fixed-point claims on a random corpus
==================================================

Random spaces with random maps that happen to be contractive; every start
is iterated and every surprise is written out as a JSON line.
"""

import collections
import sys

from pcmfix.audit import audit_corpus, write_findings

audits = audit_corpus(range(300))

# how often each condition held
counts = collections.Counter(k for a in audits for k in a.passing_conditions)
print("contractive instances:", dict(counts))
print("iterations run:", sum(a.runs for a in audits))

# findings go to stdout here; any file handle works
n = write_findings(audits, sys.stdout)
print("findings:", n)
