#pragma once

#include "aka/curve_file.hpp"
#include "aka/group.hpp"
#include "aka/hash.hpp"
#include "aka/ibs.hpp"
#include "aka/key_file.hpp"
#include "aka/protocol.hpp"
#include "aka/random.hpp"
#include "aka/report.hpp"
#include "aka/sim.hpp"
#include "aka/wire.hpp"
