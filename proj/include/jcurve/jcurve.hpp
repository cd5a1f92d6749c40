#pragma once

#include "jcurve/chained.hpp"
#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"
#include "jcurve/io.hpp"
#include "jcurve/offset.hpp"
#include "jcurve/oracle.hpp"
#include "jcurve/separation.hpp"
#include "jcurve/tolerance.hpp"
