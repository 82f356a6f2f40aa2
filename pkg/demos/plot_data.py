# # Plot files for gnuplot
#
# Writes N and R against Dt for a few alphas of the first family, plus the
# reduction eigenvalue surface, into ./demo_plots.

from pathlib import Path

from entlab import SweepConfig, run_sweep
from entlab.sweep import emit_plot_data, write_csv

out = Path("demo_plots")
config = SweepConfig(family=1, alpha_range=(3.0, 4.5, 4), c0_values=(0.5,), dt_range=(0.0, 3.2, 33))
records = run_sweep(config)
out.mkdir(exist_ok=True)
write_csv(records, out / "state1.csv")

for p in emit_plot_data(records, out, axis="dt", stem="state1_dt"):
    print(p)
for p in emit_plot_data(records, out, axis="surface", stem="state1_surface"):
    print(p)
print("render with: cd demo_plots && gnuplot state1_dt.gp")
