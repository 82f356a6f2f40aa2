# # Searching for reduction-criterion violations after the DM evolution
#
# A modest version of the full search: the second family at c0 = 0.7 on a
# coarse grid. Run `entlab sweep` and `entlab region` for the fine one.

from entlab import SweepConfig, find_negative_region, run_sweep
from entlab.sweep import realignment_crossings

config = SweepConfig(family=2, alpha_range=(0.05, 0.95, 19), c0_values=(0.7,), dt_range=(0.0, 5.0, 51))
records = run_sweep(config)
print(len(records), "grid points")

report = find_negative_region(records)
if report.empty:
    print("no violation found; smallest eigenvalue", min(r.red_min for r in records))
else:
    print(f"Dt in [{report.dt_lo}, {report.dt_hi}], alpha in [{report.alpha_lo}, {report.alpha_hi}]")

crossings = realignment_crossings(records)
print(len(crossings), "lines where R changes sign")
for c in crossings[:5]:
    print(c)
