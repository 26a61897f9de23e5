//! Models shipped with the binary. Setting `LOGSURF_EXAMPLES_DIR` makes every
//! lookup read `<dir>/<file>` instead of the embedded copy.

use std::path::PathBuf;

pub const EXAMPLES_DIR_VAR: &str = "LOGSURF_EXAMPLES_DIR";

#[derive(Debug, Clone, Copy)]
pub struct Example {
    pub name: &'static str,
    pub model_file: &'static str,
    pub assignment_file: &'static str,
}

pub const EXAMPLES: [Example; 3] = [
    Example {
        name: "example-3-2",
        model_file: "example_3_2.lsm",
        assignment_file: "example_3_2.fib",
    },
    Example {
        name: "prop-4-1",
        model_file: "prop_4_1.lsm",
        assignment_file: "prop_4_1.fib",
    },
    Example {
        name: "prop-4-2",
        model_file: "prop_4_2.lsm",
        assignment_file: "prop_4_2.fib",
    },
];

const EMBEDDED: [(&str, &str); 6] = [
    ("example_3_2.lsm", include_str!("../models/example_3_2.lsm")),
    ("example_3_2.fib", include_str!("../models/example_3_2.fib")),
    ("prop_4_1.lsm", include_str!("../models/prop_4_1.lsm")),
    ("prop_4_1.fib", include_str!("../models/prop_4_1.fib")),
    ("prop_4_2.lsm", include_str!("../models/prop_4_2.lsm")),
    ("prop_4_2.fib", include_str!("../models/prop_4_2.fib")),
];

pub fn find_example(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

pub fn is_bundled_file(file: &str) -> bool {
    EMBEDDED.iter().any(|(f, _)| *f == file)
}

/// Contents of a bundled file, honouring the override directory.
/// `None` if the name is not a bundled file.
pub fn read_bundled(file: &str) -> Option<Result<String, String>> {
    let (_, text) = EMBEDDED.iter().find(|(f, _)| *f == file)?;
    Some(match std::env::var_os(EXAMPLES_DIR_VAR) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))
        }
        None => Ok((*text).to_string()),
    })
}

/// Reads a path from disk; a bare bundled file name that does not exist on
/// disk resolves to the bundled copy.
pub fn read_input(path: &str) -> Result<String, String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) => {
            let bare = !path.contains(std::path::MAIN_SEPARATOR) && !path.contains('/');
            if bare {
                if let Some(found) = read_bundled(path) {
                    return found;
                }
            }
            Err(format!("cannot read {path}: {e}"))
        }
    }
}
