"""Reproduce the fibered-link table from the bundled LinkInfo export."""

from collections import Counter

from sqplink.database import bundled_database, load_fixture, reproduce_table

db = bundled_database()
fixture = load_fixture()
report = reproduce_table(db, fixture)

print(report.to_text())
print(Counter(e.method for e in report.entries))
