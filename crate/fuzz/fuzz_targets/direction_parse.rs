//! Fuzz target for the `ax,ay,az` spin-direction parser used by the CLI.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = catbell::settings::parse_direction(text);
    }
});
