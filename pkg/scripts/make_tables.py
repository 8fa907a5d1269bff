"""Regenerate the packaged character tables in src/toricarr/data.

The tables are computed by Dixon's algorithm and labelled phi_d^e; the
files only fix the published column order and, for F4, which of two tied
characters carries which subscript.  E7 needs roughly 1.5 GB.

    python scripts/make_tables.py F4 E6 E7
"""

import os
import sys

from toricarr.characters import F4_ALIGNMENT, apply_alignment, dixon_table, label_phi, save_table
from toricarr.roots import build
from toricarr.weyl import conjugacy_classes, enumerate_group

ORDER = {
    "F4": "phi_1^0 phi_1^24 phi_1,1^12 phi_1,2^12 phi_2,1^16 phi_2,2^4 phi_2,2^16 phi_2,1^4 "
          "phi_4^1 phi_4,2^7 phi_4,1^7 phi_4^13 phi_4^8 phi_6,2^6 phi_6,1^6 phi_8,1^3 phi_8,2^9 "
          "phi_8,2^3 phi_8,1^9 phi_9^10 phi_9,1^6 phi_9,2^6 phi_9^2 phi_12^4 phi_16^5",
    "E6": "phi_1^0 phi_1^36 phi_6^25 phi_6^1 phi_10^9 phi_15^17 phi_15^16 phi_15^5 phi_15^4 "
          "phi_20^20 phi_20^2 phi_20^10 phi_24^12 phi_24^6 phi_30^15 phi_30^3 phi_60^11 phi_60^5 "
          "phi_60^8 phi_64^13 phi_64^4 phi_80^7 phi_81^6 phi_81^10 phi_90^8",
    "E7": "phi_1^0 phi_1^63 phi_7^46 phi_7^1 phi_15^7 phi_15^28 phi_21^36 phi_21^3 phi_21^33 "
          "phi_21^6 phi_27^2 phi_27^37 phi_35^31 phi_35^4 phi_35^22 phi_35^13 phi_56^30 phi_56^3 "
          "phi_70^18 phi_70^9 phi_84^12 phi_84^15 phi_105^5 phi_105^26 phi_105^12 phi_105^6 "
          "phi_105^15 phi_105^21 phi_120^4 phi_120^25 phi_168^6 phi_168^21 phi_189^22 phi_189^20 "
          "phi_189^5 phi_189^7 phi_189^17 phi_189^10 phi_210^10 phi_210^6 phi_210^13 phi_210^21 "
          "phi_216^16 phi_216^9 phi_280^8 phi_280^17 phi_280^18 phi_280^9 phi_315^16 phi_315^7 "
          "phi_336^14 phi_336^11 phi_378^14 phi_378^9 phi_405^15 phi_405^8 phi_420^10 phi_420^13 "
          "phi_512^12 phi_512^11",
}

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "toricarr", "data")


def make(name):
    rs = build(name)
    classes = conjugacy_classes(enumerate_group(rs, max_order=4 * 10 ** 6))
    table = label_phi(dixon_table(classes, max_order=4 * 10 ** 6), classes)
    if name == "F4":
        table = apply_alignment(table, F4_ALIGNMENT)
    table = table.reordered(ORDER[name].split())
    path = os.path.join(DATA, "%s.json" % name)
    save_table(table, path)
    print("wrote", path)


if __name__ == "__main__":
    for arg in sys.argv[1:] or ["F4", "E6"]:
        make(arg)
