//! Anything the parser accepts must survive emit/parse unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use probdyn_cli::EvidenceFile;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = EvidenceFile::parse_bytes(data) else {
        return;
    };
    let emitted = file.to_toml();
    let again = EvidenceFile::parse(&emitted).expect("emitted file re-parses");
    assert_eq!(again, file);
    assert_eq!(again.to_toml(), emitted);
});
