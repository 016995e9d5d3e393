"""Tracy-Widom order-2 CDF table on a uniform grid.

Generated by scripts/generate_tw2_table.py (Fredholm-determinant
evaluation of the Airy-kernel operator).  Do not edit by hand.
"""

import numpy as np

S_GRID = np.array([
    -10.0, -9.95, -9.9, -9.85, -9.8,
    -9.75, -9.7, -9.65, -9.6, -9.55,
    -9.5, -9.45, -9.4, -9.35, -9.3,
    -9.25, -9.2, -9.15, -9.1, -9.05,
    -9.0, -8.95, -8.9, -8.85, -8.8,
    -8.75, -8.7, -8.65, -8.6, -8.55,
    -8.5, -8.45, -8.4, -8.35, -8.3,
    -8.25, -8.2, -8.15, -8.1, -8.05,
    -8.0, -7.95, -7.9, -7.85, -7.8,
    -7.75, -7.7, -7.65, -7.6, -7.55,
    -7.5, -7.45, -7.4, -7.35, -7.3,
    -7.25, -7.2, -7.15, -7.1, -7.05,
    -7.0, -6.95, -6.9, -6.85, -6.8,
    -6.75, -6.7, -6.65, -6.6, -6.55,
    -6.5, -6.45, -6.4, -6.35, -6.3,
    -6.25, -6.2, -6.15, -6.1, -6.05,
    -6.0, -5.95, -5.9, -5.85, -5.8,
    -5.75, -5.7, -5.65, -5.6, -5.55,
    -5.5, -5.45, -5.4, -5.35, -5.3,
    -5.25, -5.2, -5.15, -5.1, -5.05,
    -5.0, -4.95, -4.9, -4.85, -4.8,
    -4.75, -4.7, -4.65, -4.6, -4.55,
    -4.5, -4.45, -4.4, -4.35, -4.3,
    -4.25, -4.2, -4.15, -4.1, -4.05,
    -4.0, -3.95, -3.9, -3.85, -3.8,
    -3.75, -3.7, -3.65, -3.6, -3.55,
    -3.5, -3.45, -3.4, -3.35, -3.3,
    -3.25, -3.2, -3.15, -3.1, -3.05,
    -3.0, -2.95, -2.9, -2.85, -2.8,
    -2.75, -2.7, -2.65, -2.6, -2.55,
    -2.5, -2.45, -2.4, -2.35, -2.3,
    -2.25, -2.2, -2.15, -2.1, -2.05,
    -2.0, -1.95, -1.9, -1.85, -1.8,
    -1.75, -1.7, -1.65, -1.6, -1.55,
    -1.5, -1.45, -1.4, -1.35, -1.3,
    -1.25, -1.2, -1.15, -1.1, -1.05,
    -1.0, -0.95, -0.9, -0.85, -0.8,
    -0.75, -0.7, -0.65, -0.6, -0.55,
    -0.5, -0.45, -0.4, -0.35, -0.3,
    -0.25, -0.2, -0.15, -0.1, -0.05,
    0.0, 0.05, 0.1, 0.15, 0.2,
    0.25, 0.3, 0.35, 0.4, 0.45,
    0.5, 0.55, 0.6, 0.65, 0.7,
    0.75, 0.8, 0.85, 0.9, 0.95,
    1.0, 1.05, 1.1, 1.15, 1.2,
    1.25, 1.3, 1.35, 1.4, 1.45,
    1.5, 1.55, 1.6, 1.65, 1.7,
    1.75, 1.8, 1.85, 1.9, 1.95,
    2.0, 2.05, 2.1, 2.15, 2.2,
    2.25, 2.3, 2.35, 2.4, 2.45,
    2.5, 2.55, 2.6, 2.65, 2.7,
    2.75, 2.8, 2.85, 2.9, 2.95,
    3.0, 3.05, 3.1, 3.15, 3.2,
    3.25, 3.3, 3.35, 3.4, 3.45,
    3.5, 3.55, 3.6, 3.65, 3.7,
    3.75, 3.8, 3.85, 3.9, 3.95,
    4.0, 4.05, 4.1, 4.15, 4.2,
    4.25, 4.3, 4.35, 4.4, 4.45,
    4.5, 4.55, 4.6, 4.65, 4.7,
    4.75, 4.8, 4.85, 4.9, 4.95,
    5.0, 5.05, 5.1, 5.15, 5.2,
    5.25, 5.3, 5.35, 5.4, 5.45,
    5.5, 5.55, 5.6, 5.65, 5.7,
    5.75, 5.8, 5.85, 5.9, 5.95,
    6.0,
])

CDF_VALUES = np.array([
    4.192182411432491e-37, 1.4563824196460988e-36, 4.996113562626129e-36, 1.6926000542875002e-35,
    5.663356268195201e-35, 1.8717140269045626e-34, 6.110514060280724e-34, 1.9707046051484588e-33,
    6.279287867809201e-33, 1.9768386904404095e-32, 6.149433976582065e-32, 1.890304012210105e-31,
    5.74237254499322e-31, 1.7240217338023408e-30, 5.115801028603661e-30, 1.500489436438141e-29,
    4.350394328052732e-29, 1.246891192587468e-28, 3.533136004868501e-28, 9.898099580629103e-28,
    2.7417652019195996e-27, 7.509715329858877e-27, 2.0340362624725218e-26, 5.448327028688485e-26,
    1.4433257983429205e-25, 3.781721314238002e-25, 9.800899388651868e-25, 2.5125855529149888e-24,
    6.3720839545530124e-24, 1.598729903798526e-23, 3.968522471604475e-23, 9.746977050275998e-23,
    2.3687848127790974e-22, 5.69669558328726e-22, 1.3557803624421977e-21, 3.1933886918018598e-21,
    7.444534065278651e-21, 1.717804486313152e-20, 3.923625854375503e-20, 8.87168820868988e-20,
    1.9858980613139568e-19, 4.4011564683425165e-19, 9.657462206968208e-19, 2.098324964773128e-18,
    4.514640542052535e-18, 9.619255904056124e-18, 2.0298073775833115e-17, 4.2421927611903425e-17,
    8.781634687393518e-17, 1.8006815252474306e-16, 3.6576504550117184e-16, 7.360349171536139e-16,
    1.4674142718082703e-15, 2.898627055183582e-15, 5.673413066554385e-15, 1.10036332484283e-14,
    2.1149233330221737e-14, 4.028535089028345e-14, 7.605378884697883e-14, 1.4231245886982765e-13,
    2.6396146957383954e-13, 4.853341868661932e-13, 8.846493172732488e-13, 1.5986688448227975e-12,
    2.8643769162702418e-12, 5.0887755458924145e-12, 8.96468618989557e-12, 1.5661117330461026e-11,
    2.7133351527581872e-11, 4.66234469192074e-11, 7.946076595020438e-11, 1.3433084369246085e-10,
    2.2526854821272064e-10, 3.7476100703802097e-10, 6.185352462720991e-10, 1.0128798346994215e-09,
    1.6457429997012034e-09, 2.6534073614574555e-09, 4.245324273679994e-09, 6.740778241472812e-09,
    1.0622546732702345e-08, 1.6614753775060102e-08, 2.5794851292950175e-08, 3.975330311512183e-08,
    6.08193394995267e-08, 9.237738901103861e-08, 1.3930682368448768e-07, 2.0858786628269932e-07,
    3.10129344345038e-07, 4.5788991047144194e-07, 6.713838788831608e-07, 9.776864499841327e-07,
    1.4140812687044286e-06, 2.0315263744053164e-06, 2.899152907506164e-06, 4.110054507452469e-06,
    5.788673972183402e-06, 8.100146913499888e-06, 1.1262018873698414e-05, 1.5558811199056623e-05,
    2.1359969846741375e-05, 2.914178754563327e-05, 3.9513939973279394e-05, 5.325131680444036e-05,
    7.133185394288485e-05, 9.498107872018809e-05, 0.000125724059677972, 0.00016544540087995633,
    0.00021645783173200245, 0.0002815798116193832, 0.0003642223896763039, 0.00046848533025561977,
    0.0005992622323780055, 0.0007623540368952323, 0.0009645899310657175, 0.0012139542322960424,
    0.0015197173695936262, 0.0018925685946268784, 0.0023447475591552, 0.002890171409845377,
    0.003544553595504927, 0.004325510177796168, 0.005252649107897796, 0.00634763770183155,
    0.007634243438762583, 0.009138343239869605, 0.010887896577337325, 0.012912878126098374,
    0.015245166212005425, 0.017918384029492685, 0.02096769149276598, 0.02442952663287545,
    0.02834129663698502, 0.032741019916905895, 0.037666921956240926, 0.04315698907873254,
    0.04924848566005324, 0.055977441624545425, 0.06337811827999831, 0.07148246160169641,
    0.08031955293935017, 0.08991506775007585, 0.10029075332732415, 0.1114639365778812,
    0.12344707268459056, 0.13624734497927246, 0.14986632554662696, 0.16429970500432192,
    0.1795370985848706, 0.19556193411780207, 0.21235142581962937, 0.22987663599320085,
    0.24810262486971968, 0.2669886869502792, 0.2864886703727565, 0.30655137409597116,
    0.32712101610314237, 0.34813776442273775, 0.3695383215812292, 0.39125655216592603,
    0.4132241425051796, 0.4353712810770863, 0.4576273481374616, 0.4799216032053651,
    0.5021838594450477, 0.5243451346148218, 0.5463382690886502, 0.5680985024636118,
    0.5895640014109267, 0.6106763326733493, 0.6313808764207781, 0.6516271765122915,
    0.6713692255423934, 0.6905656838401527, 0.7091800328138909, 0.7271806641671161,
    0.7445409075332113, 0.7612389999723791, 0.7772580015332573, 0.7925856616977991,
    0.8072142419993223, 0.8211403004322481, 0.8343644434632606, 0.8468910515158218,
    0.8587279837440803, 0.8698862677504671, 0.8803797796479135, 0.8902249195370052,
    0.8994402870756233, 0.9080463613783077, 0.9160651890093078, 0.9235200833399546,
    0.9304353380406315, 0.9368359569806175, 0.9427474023257258, 0.9481953621617664,
    0.9532055385382454, 0.9578034564269201, 0.9620142937272362, 0.9658627321282129,
    0.96937282835527, 0.9725679050908799, 0.9754704606594703, 0.9781020964078556,
    0.9804834605908944, 0.9826342074851284, 0.9845729703982536, 0.9863173472157283,
    0.9878838971246792, 0.9892881471758952, 0.9905446073837192, 0.9916667931179298,
    0.9926672536080401, 0.993557605455957, 0.9943485701350878, 0.9950500145402379,
    0.9956709937409842, 0.9962197951798678, 0.9967039836439674, 0.9971304464231723,
    0.9975054381493894, 0.9978346248876405, 0.9981231271213304, 0.9983755613401193,
    0.998596079999062, 0.9987884096721141, 0.998955887271837, 0.9991014942500482,
    0.9992278887317058, 0.9993374355666464, 0.9994322343111556, 0.9995141451743766,
    0.9995848129832035, 0.9996456892344405, 0.9996980523144992, 0.9997430259757036,
    0.9997815961641414, 0.9998146262978119, 0.9998428710956553, 0.9998669890580524,
    0.9998875536983094, 0.999905063622276, 0.9999199515499468, 0.9999325923691703,
    0.999943310307004, 0.9999523852996899, 0.9999600586371254, 0.9999665379527208,
    0.9999720016243737, 0.9999766026473781, 0.9999804720350579, 0.9999837217983222,
    0.9999864475507126, 0.9999887307812912, 0.999990640833679, 0.999992236625778,
    0.999993568141202, 0.9999946777202232, 0.9999956011750333, 0.9999963687514458,
    0.9999970059566093, 0.9999975342701437, 0.9999979717539781, 0.9999983335744272,
    0.999998632448317, 0.9999988790235984, 0.9999990822034494, 0.9999992494218711,
    0.9999993868775754, 0.9999994997321895, 0.9999995922779422, 0.9999996680792939,
    0.9999997300923761, 0.999999780765561, 0.999999822124003, 0.9999998558405996,
    0.9999998832954679, 0.9999999056257213, 0.9999999237670357, 0.999999938488375,
    0.9999999504208805, 0.9999999600819218, 0.9999999678950817, 0.999999974206719,
    0.9999999792997031, 0.9999999834047661, 0.999999986709879, 0.9999999893679982,
    0.9999999915034314, 0.9999999932170865, 0.9999999945907762, 0.9999999956907535,
    0.9999999965706061, 0.9999999972736314, 0.9999999978347673, 0.999999998282173,
    0.9999999986385222, 0.9999999989220476, 0.9999999991473941, 0.9999999993263131,
    0.999999999468221, 0.9999999995806577, 0.9999999996696524, 0.9999999997400181,
    0.9999999997955986, 0.9999999998394562, 0.9999999998740274, 0.9999999999012511,
    0.9999999999226669, 0.9999999999394971, 0.9999999999527106, 0.999999999963075,
    0.9999999999711953, 0.9999999999775513, 0.9999999999825219, 0.9999999999864041,
    0.9999999999894349, 0.9999999999917972, 0.9999999999936373, 0.9999999999950698,
    0.9999999999961837,
])
