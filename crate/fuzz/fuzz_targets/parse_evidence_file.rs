#![no_main]

use libfuzzer_sys::fuzz_target;
use probdyn_cli::EvidenceFile;

fuzz_target!(|data: &[u8]| {
    let _ = EvidenceFile::parse_bytes(data);
});
