//! Small reference sequences used by the self-check and the test suites.

use crate::sequence::EventSequence;

/// Five-timestamp sequence `{a} {b} {a,c} {b} {c}`.
pub const D1_TEXT: &str = "# length=5\n1\ta\n2\tb\n3\ta,c\n4\tb\n5\tc\n";

/// Ten-timestamp running example over `{a,b,c,d}` with an empty slot at 9.
///
/// `moSet(a->b->c) = {[2,4],[7,10]}` for window bound 4, `sp(c) = 5`.
pub const RUNNING_EXAMPLE_TEXT: &str =
    "# length=10\n1\ta,d\n2\ta,b\n3\tb,d\n4\tc\n5\tc,d\n6\tb,c\n7\ta,c\n8\tb\n10\tc\n";

pub fn d1() -> EventSequence {
    EventSequence::parse(D1_TEXT).expect("valid fixture")
}

pub fn running_example() -> EventSequence {
    EventSequence::parse(RUNNING_EXAMPLE_TEXT).expect("valid fixture")
}
