#![no_main]

use libfuzzer_sys::fuzz_target;
use multifilter::imageio::pgm::{decode_pgm, encode_pgm};

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = decode_pgm(data) {
        let (bytes, report) = encode_pgm(&img);
        assert_eq!(report.clamped, 0);
        assert_eq!(decode_pgm(&bytes).unwrap(), img);
    }
});
