"""Shared table of golden CLI invocations.

Each entry is (golden file name, argv with data paths relative to this
directory, expected exit code). Regenerate the goldens with
`python3 tests/make_goldens.py` after an intentional output change.
"""

CASES = [
    ("flag_contact3.json",
     ["flag", "data/contact3.nh", "--point", "x=0,y=1/2,z=-1"], 0),
    ("dlo_contact3.json",
     ["check-dlo", "data/contact3.nh"], 0),
    ("dlo_integrable3.json",
     ["check-dlo", "data/integrable3.nh"], 1),
    ("mni_jetlike5.json",
     ["check-mni", "data/jetlike5.nh", "--k", "1"], 0),
    ("mni_integrable5.json",
     ["check-mni", "data/integrable5.nh", "--k", "1"], 1),
    ("amni5.json",
     ["check-amni", "data/amni5.nh", "--k", "1", "--omegas", "w1,w2"], 0),
    ("thinness_4_1.json",
     ["thinness", "--n", "4", "--k", "1", "--samples", "25", "--seed", "7"], 0),
    ("thinness_5_1.json",
     ["thinness", "--n", "5", "--k", "1", "--samples", "25", "--seed", "7"], 0),
    ("example_jet2.json",
     ["example", "jet-canonical-2", "--check"], 0),
    ("example_prop_ori.json",
     ["example", "prop-ori-5-1", "--check"], 0),
    ("verify_ori_k2.json",
     ["verify-ori", "--k", "2"], 0),
    ("parse_error.json",
     ["check-dlo", "data/badsyntax.nh"], 2),
    ("input_error.json",
     ["check-mni", "data/contact3.nh", "--k", "1"], 2),
]

INTERNAL_ERROR_CASE = (
    "internal_error.json",
    ["thinness", "--n", "5", "--k", "1", "--samples", "1"],
    3,
    "forced failure for the golden test",
)
