#pragma once

#include <slavkp/bethe.hpp>
#include <slavkp/chain.hpp>
#include <slavkp/diagrams.hpp>
#include <slavkp/json_io.hpp>
#include <slavkp/laurent_series.hpp>
#include <slavkp/matrix.hpp>
#include <slavkp/miwa_polynomial.hpp>
#include <slavkp/partition.hpp>
#include <slavkp/random.hpp>
#include <slavkp/scalar.hpp>
#include <slavkp/schur.hpp>
#include <slavkp/suite.hpp>
#include <slavkp/tau.hpp>
