#pragma once

#include "dcomp/binning.hpp"
#include "dcomp/bits.hpp"
#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/eq.hpp"
#include "dcomp/function.hpp"
#include "dcomp/gf.hpp"
#include "dcomp/jsonio.hpp"
#include "dcomp/km.hpp"
#include "dcomp/lemma1.hpp"
#include "dcomp/matching.hpp"
#include "dcomp/moderate.hpp"
#include "dcomp/region.hpp"
#include "dcomp/report.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/smoothness.hpp"
#include "dcomp/source.hpp"
#include "dcomp/spectral.hpp"
#include "dcomp/typicality.hpp"
#include "dcomp/words.hpp"
