#pragma once
// Umbrella header.

#include "orthoguard/geometry.hpp"
#include "orthoguard/model.hpp"
#include "orthoguard/decomp.hpp"
#include "orthoguard/classify.hpp"
#include "orthoguard/guard.hpp"
#include "orthoguard/verify.hpp"
#include "orthoguard/gen.hpp"
