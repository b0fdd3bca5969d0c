#pragma once

#include "fibdelay/asymptotics.hpp"
#include "fibdelay/bigint.hpp"
#include "fibdelay/characteristic.hpp"
#include "fibdelay/combinatorics.hpp"
#include "fibdelay/errors.hpp"
#include "fibdelay/intertwine.hpp"
#include "fibdelay/real.hpp"
#include "fibdelay/report.hpp"
#include "fibdelay/sequences.hpp"
