#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otx/machine.hpp"

namespace otx {

/// Reference machines over {a,b}, used by tests and shipped as fixtures.

StreamingTransducer dup_sst();       // w -> w·w
TwoWayTransducer dup_twoway();       // w -> w·w, two passes
TwoWayTransducer rev_twoway();       // w -> reverse(w)
StreamingTransducer pal_sst();       // w -> w·reverse(w)
StreamingTransducer revdup_sst();    // w -> reverse(w)·w
StreamingTransducer evenid_sst();    // w if |w| even, else ε
StreamingTransducer identity_sst();  // w -> w
StreamingTransducer relabel_sst();   // a<->b, letter by letter
StreamingTransducer const_eps_sst(); // always ε
TwoWayTransducer looper_twoway();    // never halts on any input

/// The four origin variants of the identity on "ab" (ε elsewhere): 'a'
/// tags each output letter with its own position, 'b' sources everything
/// from the second letter, 'c' from the first, 'd' swaps the two origins.
TwoWayTransducer ab_variant(char which);

/// Machines that halt on every input, keyed by fixture name.
std::vector<std::pair<std::string, Machine>> zoo();

/// zoo() plus the intentionally looping machine.
std::vector<std::pair<std::string, Machine>> zoo_with_looper();

}  // namespace otx
