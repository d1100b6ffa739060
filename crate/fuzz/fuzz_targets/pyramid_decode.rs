#![no_main]

use libfuzzer_sys::fuzz_target;
use multifilter::image2d::container::{decode_pyramid, encode_pyramid};

fuzz_target!(|data: &[u8]| {
    if let Ok(pyr) = decode_pyramid(data) {
        assert_eq!(decode_pyramid(&encode_pyramid(&pyr)).unwrap(), pyr);
    }
});
