#pragma once

#include "checker.hpp"
#include "completeness.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "model_io.hpp"
#include "report.hpp"
#include "semantics.hpp"
#include "yablo.hpp"
