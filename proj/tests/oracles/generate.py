"""Writes oracle_values.hpp from the module oracle scripts.

The header is committed; rerun this only when an oracle definition changes.
"""
import os
import sys

import mpmath as mp

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import furry_oracle  # noqa: E402
import ising_oracle  # noqa: E402
import pt_oracle  # noqa: E402
import specfun_oracle  # noqa: E402



def emit(name, v):
    v = mp.mpmathify(v)
    if isinstance(v, mp.mpc):
        return "inline const std::complex<double> %s{%s, %s};" % (name, mp.nstr(v.real, 20), mp.nstr(v.imag, 20))
    return "inline constexpr double %s = %s;" % (name, mp.nstr(v, 20))


def main():
    lines = ["// Generated by tests/oracles/generate.py from mpmath; do not edit.",
             "#pragma once", "", "#include <complex>", "", "namespace oracle {", ""]
    for mod in (specfun_oracle, pt_oracle, furry_oracle, ising_oracle):
        lines.append("// %s" % mod.__name__)
        for k, v in mod.values().items():
            lines.append(emit(k, v))
        lines.append("")
    lines.append("}  // namespace oracle")
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "oracle_values.hpp")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path)


if __name__ == "__main__":
    main()
