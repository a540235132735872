#pragma once

#include "q2p/arith.hpp"
#include "q2p/classgroup.hpp"
#include "q2p/dioph.hpp"
#include "q2p/represent.hpp"
#include "q2p/survey.hpp"
#include "q2p/tables.hpp"
#include "q2p/tower.hpp"
#include "q2p/zsqrt2.hpp"
