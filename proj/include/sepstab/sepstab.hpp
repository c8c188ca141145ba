#pragma once

#include "sepstab/csv.hpp"
#include "sepstab/dot.hpp"
#include "sepstab/error.hpp"
#include "sepstab/gallery.hpp"
#include "sepstab/group.hpp"
#include "sepstab/moebius.hpp"
#include "sepstab/pingpong.hpp"
#include "sepstab/repfile.hpp"
#include "sepstab/representation.hpp"
#include "sepstab/separability.hpp"
#include "sepstab/stability.hpp"
#include "sepstab/sweep.hpp"
#include "sepstab/whitehead.hpp"
