#pragma once

#include "readout_task.hpp"

namespace leglab::harness {

/// The stock readout benchmark: a d = 2 damped-rotation state-space model
/// observed through its first coordinate drives a 16-oscillator linear-in-p
/// reservoir whose frequencies form a complete Fourier basis on the 16-step
/// context window. Matches configs/readout_task.json.
ReadoutTaskSpec default_readout_task();

}  // namespace leglab::harness
