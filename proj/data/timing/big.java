class Big {
    int m0(int a0, int b0) {
        int x = a0 + 1;
        int y = b0 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m1(int a1, int b1) {
        int x = a1 + 1;
        int y = b1 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m2(int a2, int b2) {
        int x = a2 + 1;
        int y = b2 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m3(int a3, int b3) {
        int x = a3 + 1;
        int y = b3 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m4(int a4, int b4) {
        int x = a4 + 1;
        int y = b4 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m5(int a5, int b5) {
        int x = a5 + 1;
        int y = b5 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m6(int a6, int b6) {
        int x = a6 + 1;
        int y = b6 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m7(int a7, int b7) {
        int x = a7 + 1;
        int y = b7 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m8(int a8, int b8) {
        int x = a8 + 1;
        int y = b8 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m9(int a9, int b9) {
        int x = a9 + 1;
        int y = b9 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m10(int a10, int b10) {
        int x = a10 + 1;
        int y = b10 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m11(int a11, int b11) {
        int x = a11 + 1;
        int y = b11 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m12(int a12, int b12) {
        int x = a12 + 1;
        int y = b12 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m13(int a13, int b13) {
        int x = a13 + 1;
        int y = b13 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m14(int a14, int b14) {
        int x = a14 + 1;
        int y = b14 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m15(int a15, int b15) {
        int x = a15 + 1;
        int y = b15 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m16(int a16, int b16) {
        int x = a16 + 1;
        int y = b16 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m17(int a17, int b17) {
        int x = a17 + 1;
        int y = b17 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m18(int a18, int b18) {
        int x = a18 + 1;
        int y = b18 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m19(int a19, int b19) {
        int x = a19 + 1;
        int y = b19 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m20(int a20, int b20) {
        int x = a20 + 1;
        int y = b20 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m21(int a21, int b21) {
        int x = a21 + 1;
        int y = b21 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m22(int a22, int b22) {
        int x = a22 + 1;
        int y = b22 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m23(int a23, int b23) {
        int x = a23 + 1;
        int y = b23 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m24(int a24, int b24) {
        int x = a24 + 1;
        int y = b24 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m25(int a25, int b25) {
        int x = a25 + 1;
        int y = b25 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m26(int a26, int b26) {
        int x = a26 + 1;
        int y = b26 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m27(int a27, int b27) {
        int x = a27 + 1;
        int y = b27 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m28(int a28, int b28) {
        int x = a28 + 1;
        int y = b28 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m29(int a29, int b29) {
        int x = a29 + 1;
        int y = b29 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m30(int a30, int b30) {
        int x = a30 + 1;
        int y = b30 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m31(int a31, int b31) {
        int x = a31 + 1;
        int y = b31 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m32(int a32, int b32) {
        int x = a32 + 1;
        int y = b32 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m33(int a33, int b33) {
        int x = a33 + 1;
        int y = b33 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m34(int a34, int b34) {
        int x = a34 + 1;
        int y = b34 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m35(int a35, int b35) {
        int x = a35 + 1;
        int y = b35 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m36(int a36, int b36) {
        int x = a36 + 1;
        int y = b36 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m37(int a37, int b37) {
        int x = a37 + 1;
        int y = b37 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m38(int a38, int b38) {
        int x = a38 + 1;
        int y = b38 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m39(int a39, int b39) {
        int x = a39 + 1;
        int y = b39 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m40(int a40, int b40) {
        int x = a40 + 1;
        int y = b40 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m41(int a41, int b41) {
        int x = a41 + 1;
        int y = b41 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m42(int a42, int b42) {
        int x = a42 + 1;
        int y = b42 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m43(int a43, int b43) {
        int x = a43 + 1;
        int y = b43 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m44(int a44, int b44) {
        int x = a44 + 1;
        int y = b44 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m45(int a45, int b45) {
        int x = a45 + 1;
        int y = b45 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m46(int a46, int b46) {
        int x = a46 + 1;
        int y = b46 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m47(int a47, int b47) {
        int x = a47 + 1;
        int y = b47 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m48(int a48, int b48) {
        int x = a48 + 1;
        int y = b48 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m49(int a49, int b49) {
        int x = a49 + 1;
        int y = b49 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m50(int a50, int b50) {
        int x = a50 + 1;
        int y = b50 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m51(int a51, int b51) {
        int x = a51 + 1;
        int y = b51 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m52(int a52, int b52) {
        int x = a52 + 1;
        int y = b52 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m53(int a53, int b53) {
        int x = a53 + 1;
        int y = b53 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m54(int a54, int b54) {
        int x = a54 + 1;
        int y = b54 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m55(int a55, int b55) {
        int x = a55 + 1;
        int y = b55 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m56(int a56, int b56) {
        int x = a56 + 1;
        int y = b56 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m57(int a57, int b57) {
        int x = a57 + 1;
        int y = b57 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m58(int a58, int b58) {
        int x = a58 + 1;
        int y = b58 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m59(int a59, int b59) {
        int x = a59 + 1;
        int y = b59 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m60(int a60, int b60) {
        int x = a60 + 1;
        int y = b60 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m61(int a61, int b61) {
        int x = a61 + 1;
        int y = b61 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m62(int a62, int b62) {
        int x = a62 + 1;
        int y = b62 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m63(int a63, int b63) {
        int x = a63 + 1;
        int y = b63 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m64(int a64, int b64) {
        int x = a64 + 1;
        int y = b64 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m65(int a65, int b65) {
        int x = a65 + 1;
        int y = b65 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m66(int a66, int b66) {
        int x = a66 + 1;
        int y = b66 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m67(int a67, int b67) {
        int x = a67 + 1;
        int y = b67 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m68(int a68, int b68) {
        int x = a68 + 1;
        int y = b68 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m69(int a69, int b69) {
        int x = a69 + 1;
        int y = b69 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m70(int a70, int b70) {
        int x = a70 + 1;
        int y = b70 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m71(int a71, int b71) {
        int x = a71 + 1;
        int y = b71 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m72(int a72, int b72) {
        int x = a72 + 1;
        int y = b72 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m73(int a73, int b73) {
        int x = a73 + 1;
        int y = b73 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m74(int a74, int b74) {
        int x = a74 + 1;
        int y = b74 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int m75(int a75, int b75) {
        int x = a75 + 1;
        int y = b75 * 2;
        if (x > y) {
            x = x - y;
        } else {
            y = y - x;
        }
        while (x < 10) {
            x = x + 1;
        }
        return x + y;
    }
    int f988 = 988;
    int f989 = 989;
    int f990 = 990;
    int f991 = 991;
    int f992 = 992;
    int f993 = 993;
    int f994 = 994;
    int f995 = 995;
    int f996 = 996;
    int f997 = 997;
}
