#pragma once

#include <string>
#include <vector>

// One invocation per entry, run in order inside a scratch directory. Every
// command takes a fixed seed, so two runs must leave identical bytes behind.
inline const std::vector<std::string> kCliScript = {
    "--seed 5 cvqc keygen --x 100 --pp pp.qnk --key vk.qnk",
    "--seed 5 cvqc prove --x 100 --pp pp.qnk --out proof.qnk",
    "--seed 5 cvqc verify --x 100 --key vk.qnk --proof proof.qnk",
    "--seed 5 cvqc keygen --x 100 --proto toy --pp tpp.qnk --key tvk.qnk",
    "--seed 5 cvqc prove --x 100 --pp tpp.qnk --out tproof.qnk",
    "--seed 5 cvqc tdgen --x 100 --proto toy --pp tdpp.qnk --spec tdspec.qnk",
    "--seed 5 cvqc prove --x 100 --pp tdpp.qnk --out tdproof.qnk",
    "--seed 5 cvqc tdverify --spec tdspec.qnk --proof tdproof.qnk",
    "cvqc simgen --x 100 --proto toy --pp simpp.qnk --spec simspec.qnk --seed 5",
    "--seed 5 --params mini nio obf --x 111 --out nio.qnk",
    "--seed 5 nio eval --x 111 --in nio.qnk",
    "--seed 5 --params mini we enc --x 100 --m 0x5ac3 --out we.qnk",
    "--seed 5 --params mini we dec --x 100 --in we.qnk",
    "--seed 5 --params mini --lang ghz we enc --x 110 --m 1 --out ghz.qnk",
    "--seed 5 --lang ghz we dec --x 110 --in ghz.qnk",
    "--seed 5 --params mini nizk setup --bits 3 --crs crs.qnk --escrow escrow.qnk",
    "--seed 5 nizk prove --crs crs.qnk --x 010 --out nizk.qnk",
    "--seed 5 nizk verify --crs crs.qnk --x 010 --proof nizk.qnk",
    "--seed 5 nizk sim --escrow escrow.qnk --x 010 --out nizk_sim.qnk",
    "--seed 5 nizk hybrids --crs crs.qnk --escrow escrow.qnk --x 011",
    "--seed 5 --params mini zapr setup --bits 3 --out zcrs.qnk",
    "--seed 5 zapr prove --crs zcrs.qnk --x 001 --out zproof.qnk",
    "--seed 5 zapr verify --crs zcrs.qnk --x 001 --proof zproof.qnk",
    "--seed 5 abe gen --bits 4 --mpk mpk.qnk --msk msk.qnk",
    "--seed 5 abe keygen --msk msk.qnk --x 1011 --out uk.qnk",
    "--seed 5 --params mini abe enc --mpk mpk.qnk --policy maj:4 --m 0x77 --out abe.qnk",
    "--seed 5 abe dec --key uk.qnk --in abe.qnk",
    "--seed 5 --params mini pe enc --mpk mpk.qnk --policy or:4 --m 1 --out pe.qnk",
    "--seed 5 pe dec --key uk.qnk --in pe.qnk",
    "--seed 5 --params mini cprf gen --bits 4 --pp cpp.qnk --key ck.qnk",
    "--seed 5 cprf eval --key ck.qnk --x 0110",
    "--seed 5 cprf constrain --key ck.qnk --policy par:4 --out cck.qnk",
    "--seed 5 cprf ceval --pp cpp.qnk --key cck.qnk --x 0111",
    "--seed 5 --params mini --lang th:2 share deal --parties 3 --s 1 --out-dir shares",
    "--seed 5 share reconstruct --in shares/share_1.qnk shares/share_2.qnk",
    "--seed 5 --params mini attack flip --instances 3 --report flip.json",
    "--seed 5 --params mini attack stats --instances 1 --samples 100 --report stats.json",
    "--seed 5 --params mini attack linear --instances 2 --report linear.json",
    "--seed 5 --params mini selftest --only 1",
};
