//! The CLI examples documented in the README. Paths are relative to `crates/cli/fixtures`.

pub struct Example {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "synth constant",
        args: &["synth", "--input", "constant.spec", "--count", "3"],
        exit: 0,
    },
    Example {
        name: "synth recurrence",
        args: &["synth", "--input", "counting.spec", "--count", "4"],
        exit: 0,
    },
    Example {
        name: "synth quarter turn",
        args: &["synth", "--input", "quarter-turn.spec", "--count", "4"],
        exit: 0,
    },
    Example {
        name: "fit cosine",
        args: &["fit", "--input", "cos-eighth.csv", "--order", "2"],
        exit: 0,
    },
    Example {
        name: "fit constant",
        args: &["fit", "--input", "constant.csv", "-p", "1"],
        exit: 0,
    },
    Example {
        name: "fit short",
        args: &["fit", "--input", "short.csv", "-p", "2"],
        exit: 2,
    },
    Example {
        name: "construct dct constant",
        args: &[
            "construct",
            "--input",
            "constant.csv",
            "--method",
            "dct",
            "-p",
            "1",
        ],
        exit: 0,
    },
    Example {
        name: "construct diff square",
        args: &[
            "construct",
            "--input",
            "square.csv",
            "--method",
            "diff",
            "-p",
            "3",
        ],
        exit: 0,
    },
    Example {
        name: "construct dct pair",
        args: &[
            "construct",
            "--input",
            "pair.csv",
            "--method",
            "dct",
            "-p",
            "1",
        ],
        exit: 0,
    },
    Example {
        name: "experiment refine sin",
        args: &["experiment", "refine", "--config", "refine-sin.conf"],
        exit: 0,
    },
    Example {
        name: "experiment order-sweep cubic",
        args: &["experiment", "order-sweep", "--config", "sweep-cubic.conf"],
        exit: 0,
    },
    Example {
        name: "experiment refine linear",
        args: &["experiment", "refine", "--config", "refine-linear.conf"],
        exit: 0,
    },
];
