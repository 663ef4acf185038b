"""One pass through every CLI subcommand, writing CSVs into demo_out/.

Runs the console entry point in-process, so the files here are exactly what
`qesspin ...` produces on the shell.  The outputs double as sample inputs
for any downstream plotting; see docs/schema.md for the column contracts.
"""

import os

from qesspin.cli import main

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "demo_out")

COMMANDS = [
    ["spectrum", "--model", "lmg", "--twice-j", "6", "--delta", "1.0",
     "--g", "0.45", "--source", "engine", "--output", "spectrum_lmg.csv"],
    ["spectrum", "--model", "lmg", "--twice-j", "6", "--delta", "1.0",
     "--g", "0.45", "--source", "recursion", "--output",
     "spectrum_lmg_recursion.csv"],
    ["roots", "--model", "two-axis", "--twice-j", "10", "--chi", "1.0",
     "--output", "roots_two_axis.csv"],
    ["sphere", "--model", "rotor", "--twice-j", "20", "--a", "20", "--b",
     "1.5", "--c", "1.2", "--level", "0", "--output", "sphere_rotor.csv"],
    ["scan", "--model", "rotor", "--twice-j", "20", "--a", "20", "--b", "1.5",
     "--param", "c", "--from", "0.5", "--to", "3.0", "--count", "60",
     "--levels", "3", "--output", "scan_rotor.csv",
     "--levels-output", "scan_rotor_levels.csv"],
    ["scan", "--model", "two-axis", "--twice-j", "20", "--param", "chi",
     "--from", "0.1", "--to", "5.0", "--count", "40",
     "--output", "scan_two_axis.csv"],
    ["recursion", "--model", "lmg", "--twice-j", "8", "--delta", "1.0",
     "--g", "0.45", "--output", "recursion_lmg.csv"],
    ["verify", "--model", "rotor", "--twice-j", "20", "--a", "20", "--b",
     "1.5", "--c", "1.2", "--output", "verify_rotor.csv"],
]


def main_demo():
    os.makedirs(OUT, exist_ok=True)
    for argv in COMMANDS:
        argv = list(argv)
        for flag in ("--output", "--levels-output"):
            if flag in argv:
                i = argv.index(flag) + 1
                argv[i] = os.path.join(OUT, argv[i])
        code = main(argv)
        print("qesspin %-10s -> exit %d  (%s)"
              % (argv[0], code, os.path.basename(argv[argv.index("--output") + 1])))
        assert code == 0, argv


if __name__ == "__main__":
    main_demo()
