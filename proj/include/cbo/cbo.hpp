#pragma once

#include <cbo/dimension.hpp>
#include <cbo/error.hpp>
#include <cbo/field.hpp>
#include <cbo/int_matrix.hpp>
#include <cbo/linalg.hpp>
#include <cbo/matrix.hpp>
#include <cbo/order.hpp>
#include <cbo/partial_perm.hpp>
#include <cbo/poset.hpp>
#include <cbo/random.hpp>
#include <cbo/rank_control.hpp>
#include <cbo/verify.hpp>
