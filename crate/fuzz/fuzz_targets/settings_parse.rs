//! Fuzz target for the measurement-settings file parser.
//!
//! The parser takes untrusted text; it must return a line-numbered error
//! for anything malformed and never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = catbell::settings::parse_settings(text);
    }
});
