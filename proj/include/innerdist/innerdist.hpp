#pragma once

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/content.hpp"
#include "innerdist/corpus.hpp"
#include "innerdist/dynamics.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/halfplane.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/json_io.hpp"
#include "innerdist/measures.hpp"
#include "innerdist/preimage.hpp"
#include "innerdist/rng.hpp"
#include "innerdist/suites.hpp"
