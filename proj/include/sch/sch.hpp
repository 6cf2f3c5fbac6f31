#pragma once

#include "sch/errors.hpp"
#include "sch/geometry.hpp"
#include "sch/dataset.hpp"
#include "sch/oracle.hpp"
#include "sch/diameter.hpp"
#include "sch/hardness.hpp"
#include "sch/width.hpp"
#include "sch/complexity.hpp"
