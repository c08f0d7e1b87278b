(function(){const t=document.createElement("link").relList;if(t&&t.supports&&t.supports("modulepreload"))return;for(const o of document.querySelectorAll('link[rel="modulepreload"]'))s(o);new MutationObserver(o=>{for(const c of o)if(c.type==="childList")for(const u of c.addedNodes)u.tagName==="LINK"&&u.rel==="modulepreload"&&s(u)}).observe(document,{childList:!0,subtree:!0});function e(o){const c={};return o.integrity&&(c.integrity=o.integrity),o.referrerPolicy&&(c.referrerPolicy=o.referrerPolicy),o.crossOrigin==="use-credentials"?c.credentials="include":o.crossOrigin==="anonymous"?c.credentials="omit":c.credentials="same-origin",c}function s(o){if(o.ep)return;o.ep=!0;const c=e(o);fetch(o.href,c)}})();function jt(n){return 60/n.bpm/n.stepsPerBeat}function Kt(n){return{nextIndex:0,nextTime:n}}function Wt(n,t,e,s){const o=jt(t),c=e+s,u=[];let{nextIndex:d,nextTime:g}=n;for(;g<c;)u.push({step:d%t.stepsPerLoop,loop:Math.floor(d/t.stepsPerLoop),time:g}),d+=1,g+=o;return{events:u,cursor:{nextIndex:d,nextTime:g}}}function Jt(n,t){return{...n,bpm:t}}const rt=120,Qt=.12,Zt=30;class te{constructor(){this.ctx=null,this.master=null,this.timer=null,this.cursor=null,this.transport=null,this.spec=null,this.stepListeners=[],this.stopListeners=[],this.pendingUi=[]}onStep(t){this.stepListeners.push(t)}onStop(t){this.stopListeners.push(t)}get playing(){return this.timer!==null}setBpm(t){this.transport&&(this.transport=Jt(this.transport,t))}start(t,e=rt){this.stop();const s=this.ensureContext();this.spec=t,this.transport={bpm:e,stepsPerBeat:t.stepsPerBeat,stepsPerLoop:t.stepsPerLoop},this.cursor=Kt(s.currentTime+.05),this.timer=window.setInterval(()=>this.tick(),Zt),this.tick()}stop(){const t=this.timer!==null;if(this.timer!==null&&(window.clearInterval(this.timer),this.timer=null),this.cursor=null,this.spec=null,this.pendingUi=[],t)for(const e of this.stopListeners)e()}ensureContext(){return this.ctx===null&&(this.ctx=new AudioContext,this.master=this.ctx.createGain(),this.master.gain.value=.8,this.master.connect(this.ctx.destination)),this.ctx.state==="suspended"&&this.ctx.resume(),this.ctx}tick(){if(!this.ctx||!this.master||!this.cursor||!this.transport||!this.spec)return;const{events:t,cursor:e}=Wt(this.cursor,this.transport,this.ctx.currentTime,Qt);this.cursor=e;for(const o of t){if(this.spec.loops!==void 0&&o.loop>=this.spec.loops){this.stop();return}this.spec.onStep(this.ctx,this.master,o),this.pendingUi.push({at:o.time,step:o.step,loop:o.loop})}const s=this.ctx.currentTime;for(;this.pendingUi.length>0&&this.pendingUi[0].at<=s;){const o=this.pendingUi.shift();for(const c of this.stepListeners)c(o.step,o.loop)}}}const P=new te;class Bt extends Error{constructor(t,e,s){super(e),this.status=t,this.field=s}}async function N(n,t,e){const s=await fetch(t,{method:n,headers:e===void 0?void 0:{"content-type":"application/json"},body:e===void 0?void 0:JSON.stringify(e)}),o=await s.json().catch(()=>({}));if(!s.ok){const c=typeof o.error=="string"?o.error:`HTTP ${s.status}`;throw new Bt(s.status,c,o.field??null)}return o}const I={drumRandom(n){const t=n===void 0?"":`?seed=${n}`;return N("GET",`/api/drum/random${t}`)},drumEncode(n){return N("POST","/api/drum/encode",n)},drumDecode(n){return N("POST","/api/drum/decode",n)},drumAdjust(n,t,e){return N("POST","/api/drum/adjust",{latent:n,index:t,value:e})},library(){return N("GET","/api/leadsheet/library")},interpolate(n,t,e,s="slerp"){return N("POST","/api/leadsheet/interpolate",{id_a:n,id_b:t,steps:e,mode:s})},harmonize(n){return N("POST","/api/harmonize",n)},turingStart(n){return N("POST","/api/turing/start",{mode:n})},turingGuess(n,t,e){return N("POST","/api/turing/guess",{session_id:n,round_id:t,slot:e})}};function Ot(n,t){for(const[e,s]of Object.entries(t))typeof s=="function"?n.addEventListener(e,s):e==="class"?n.setAttribute("class",String(s)):typeof s=="boolean"?s&&n.setAttribute(e,""):n.setAttribute(e,String(s))}function i(n,t={},...e){const s=document.createElement(n);return Ot(s,t),s.append(...e),s}const ee="http://www.w3.org/2000/svg";function S(n,t={},...e){const s=document.createElementNS(ee,n);return Ot(s,t),s.append(...e),s}function j(n){for(;n.firstChild;)n.removeChild(n.firstChild)}let G=null,lt=null;function ne(n){G=i("div",{class:"banner hidden",role:"alert"}),n.append(G)}function $(n){if(!G)return;let t;n instanceof Bt?t=n.field?`${n.message} (field: ${n.field})`:n.message:n instanceof Error?t=n.message:t=String(n),G.textContent=`request failed: ${t}`,G.classList.remove("hidden"),lt!==null&&window.clearTimeout(lt),lt=window.setTimeout(()=>G==null?void 0:G.classList.add("hidden"),6e3)}const pt=9,Dt=96,D=64,O=8,z=0,ft=1,se=[(n,t,e)=>J(n,t,e,150,45,.35,1),(n,t,e)=>{Q(n,t,e,.18,1800,"bandpass",.5),J(n,t,e,240,170,.12,.4)},(n,t,e)=>Q(n,t,e,.05,7e3,"highpass",.35),(n,t,e)=>Q(n,t,e,.3,6500,"highpass",.3),(n,t,e)=>J(n,t,e,180,110,.3,.6),(n,t,e)=>J(n,t,e,240,150,.26,.6),(n,t,e)=>J(n,t,e,330,210,.22,.6),(n,t,e)=>Q(n,t,e,.9,4500,"highpass",.4),(n,t,e)=>Q(n,t,e,.5,8e3,"bandpass",.25)];let W=null;function oe(n){if(W===null||W.sampleRate!==n.sampleRate){const t=n.sampleRate;W=n.createBuffer(1,t,n.sampleRate);const e=W.getChannelData(0);for(let s=0;s<t;s++)e[s]=Math.random()*2-1}return W}function It(n,t,e,s,o){const c=n.createGain();return c.gain.setValueAtTime(s,e),c.gain.exponentialRampToValueAtTime(.001,e+o),c.connect(t),c}function J(n,t,e,s,o,c,u){const d=n.createOscillator();d.type="sine",d.frequency.setValueAtTime(s,e),d.frequency.exponentialRampToValueAtTime(o,e+c),d.connect(It(n,t,e,u,c)),d.start(e),d.stop(e+c+.05)}function Q(n,t,e,s,o,c,u){const d=n.createBufferSource();d.buffer=oe(n);const g=n.createBiquadFilter();g.type=c,g.frequency.value=o,d.connect(g),g.connect(It(n,t,e,u,s)),d.start(e),d.stop(e+s+.05)}function ie(n,t,e,s){const o=se[e];o&&o(n,t,s)}function $t(n,t,e,s,o,c=.35,u="triangle"){const d=n.createOscillator();d.type=u,d.frequency.value=440*Math.pow(2,(e-69)/12);const g=n.createGain();g.gain.setValueAtTime(1e-4,s),g.gain.linearRampToValueAtTime(c,s+.01),g.gain.setValueAtTime(c,s+Math.max(.01,o-.04)),g.gain.linearRampToValueAtTime(1e-4,s+o),d.connect(g),g.connect(t),d.start(s),d.stop(s+o+.05)}function re(n,t,e,s,o,c){const u=48+e,d=s==="min"?3:4;for(const g of[0,d,7])$t(n,t,u+g,o,c,.12,"sawtooth")}const St=2,ce=48,at=D/8,le=24,wt=4;function ae(n,t){return{stepsPerBeat:le,stepsPerLoop:Dt,loops:t,onStep:(e,s,o)=>{const c=n();for(let u=0;u<c.length;u+=1)c[u][o.step]>0&&ie(e,s,u,o.time)}}}function ue(n,t){let e=1;for(let s=t+1;s<n.length&&n[s]===ft;s+=1)e+=1;return e}function mt(n,t,e=120){return{stepsPerBeat:wt,stepsPerLoop:D,loops:t,onStep:(s,o,c)=>{const{tokens:u,chords:d}=n(),g=60/e/wt,A=u[c.step];if(A>=St){const v=A-St+ce,L=ue(u,c.step);$t(s,o,v,c.time,L*g)}if(d&&c.step%at===0){const v=d[c.step/at];v&&v.quality!=="nc"&&re(s,o,v.root,v.quality,c.time,at*g)}}}}class X{constructor(){this.ticket=0}async run(t){this.ticket+=1;const e=this.ticket;try{const s=await t();return e===this.ticket?s:null}catch(s){if(e===this.ticket)throw s;return null}}}const ut=16,ot=6;function Nt(n,t,e){const s=e*ot;for(let o=s;o<s+ot;o++)if(n[t][o]===1)return!0;return!1}function de(n,t,e){const s=n.map(c=>c.slice()),o=e*ot;if(Nt(n,t,e))for(let c=o;c<o+ot;c++)s[t][c]=0;else s[t][o]=1;return s}function pe(n){const t=[];let e=z;for(const s of n){const o=s===ft&&e===z?z:s;t.push(o),e=o}return t}function he(n,t,e){const s=n.slice();return s[t]=s[t]===e?z:e,pe(s)}function Et(){return new Array(D).fill(z)}function gt(n){const t=[];let e=null;for(let s=0;s<n.length;s+=1){const o=n[s];o>=2?(e&&t.push(e),e={start:s,end:s+1,token:o}):o===ft&&e?e.end=s+1:o===z&&e&&(t.push(e),e=null)}return e&&t.push(e),t}const et=32,it=-4,yt=4;function vt(n){return Math.min(yt,Math.max(it,n))}function Gt(n,t){const e=(vt(n)-it)/(yt-it);return t.innerRadius+e*(t.outerRadius-t.innerRadius)}function fe(n,t){const e=(n-t.innerRadius)/(t.outerRadius-t.innerRadius);return vt(it+e*(yt-it))}function me(n){return n/et*2*Math.PI-Math.PI/2}function ge(n,t,e){const s=Gt(n[t],e),o=me(t);return{x:e.centerX+s*Math.cos(o),y:e.centerY+s*Math.sin(o)}}function Pt(n,t){const e=n.map((s,o)=>ge(n,o,t));return e.push(e[0]),e}function ye(n,t,e){const s=n.slice();return s[t]=vt(e),s}function ve(n,t,e){const o=(Math.atan2(t-e.centerY,n-e.centerX)+Math.PI/2)/(2*Math.PI);return(Math.round(o*et)%et+et)%et}function Lt(n,t,e){return Math.hypot(n-e.centerX,t-e.centerY)}const xe=["kick","snare","closed hat","open hat","low tom","mid tom","high tom","crash","ride"],H=380,B={centerX:H/2,centerY:H/2,innerRadius:26,outerRadius:172},Tt=16;function be(){return Array.from({length:pt},()=>new Array(Dt).fill(0))}function Se(n){let t=null,e=be(),s=null,o=null,c=rt,u=!1;const d=new X,g=new X,A=new X,v=S("svg",{class:"latent-diagram",viewBox:`0 0 ${H} ${H}`}),L=i("div",{class:"drum-grid"}),E=i("button",{class:"primary",click:V},"Play"),p=i("button",{click:R},"New pattern"),a=i("input",{type:"number",min:40,max:220,value:c,change:()=>{const r=Number(a.value);Number.isFinite(r)&&r>=40&&r<=220?(c=r,P.setBpm(c)):a.value=String(c)}}),x=[],w=[];let _=null;n.append(i("section",{class:"demo"},i("div",{class:"demo-header"},i("h2",{},"Latent Inspector"),i("p",{class:"hint"},"Drag a vertex to nudge one latent dimension, or click the grid to ","edit the beat. Each edit round-trips through the model so the two ","views stay in sync."),i("div",{class:"controls"},E,i("label",{class:"field"},"bpm ",a),p)),i("div",{class:"drum-body"},i("div",{class:"diagram-box"},v),L)));function M(){return s??(t==null?void 0:t.values)??null}function T(){j(v);for(const m of[-4,0,4])v.append(S("circle",{class:m===0?"guide zero":"guide",cx:B.centerX,cy:B.centerY,r:Gt(m,B)}));const r=M();if(r===null)return;const l=Pt(r,B).map(m=>`${m.x.toFixed(2)},${m.y.toFixed(2)}`).join(" ");v.append(S("polyline",{class:"latent-outline",points:l})),Pt(r,B).slice(0,-1).forEach((m,C)=>{v.append(S("circle",{class:C===o?"vertex dragging":"vertex",cx:m.x,cy:m.y,r:5}))})}function h(){j(L),w.length=0,x.length=0,L.append(i("div",{class:"corner"}));for(let r=0;r<ut;r+=1){const l=i("div",{class:"col-head"},String(r+1));x.push(l),L.append(l)}for(let r=0;r<pt;r+=1){L.append(i("div",{class:"track-label"},xe[r]));const l=[];for(let f=0;f<ut;f+=1){const m=Nt(e,r,f),C=i("button",{class:`cell${m?" on":""}${f%4===0?" beat":""}`,click:()=>k(r,f)});l.push(C),L.append(C)}w.push(l)}y()}function y(){var r,l,f;for(let m=0;m<ut;m+=1){const C=m===_;(r=x[m])==null||r.classList.toggle("playhead",C);for(let K=0;K<pt;K+=1)(f=(l=w[K])==null?void 0:l[m])==null||f.classList.toggle("playhead",C)}}function b(r){r!==_&&(_=r,y())}function k(r,l){e=de(e,r,l),h(),g.run(()=>I.drumEncode({grid:e})).then(f=>{f&&(t=f.latent,T())}).catch($)}function R(){d.run(()=>I.drumRandom()).then(r=>{r&&(t=r.latent,e=r.pattern.grid,s=null,T(),h())}).catch($)}function V(){if(u){P.stop();return}P.start(ae(()=>e),c),u=!0,E.textContent="Stop"}P.onStop(()=>{u&&(u=!1,E.textContent="Play",b(null))}),P.onStep(r=>{u&&b(Math.floor(r/ot))});function F(r){const l=v.getBoundingClientRect();return{x:(r.clientX-l.left)/l.width*H,y:(r.clientY-l.top)/l.height*H}}v.addEventListener("pointerdown",r=>{if(!t)return;const l=F(r),f=Lt(l.x,l.y,B);f<B.innerRadius-Tt||f>B.outerRadius+Tt||(o=ve(l.x,l.y,B),s=t.values.slice(),v.setPointerCapture(r.pointerId),U(l))});function U(r){if(o===null||s===null)return;const l=fe(Lt(r.x,r.y,B),B);s=ye(s,o,l),T()}v.addEventListener("pointermove",r=>{o!==null&&U(F(r))}),v.addEventListener("pointerup",()=>{if(o===null||s===null||t===null)return;const r=o,l=s[r],f=t;o=null,T(),A.run(()=>I.drumAdjust(f,r,l)).then(m=>{m&&(t=m.latent,e=m.pattern.grid,s=null,T(),h())}).catch(m=>{s=null,T(),$(m)})}),T(),h(),R()}const we=D/O,Ee=["tonic","subdominant","dominant"],Pe=["C","G","D","A","E","B","F#","Db","Ab","Eb","Bb","F"];function Le(n){const t=Math.floor(n/we);return Math.min(O-1,Math.max(0,t))}function Te(n){return n===null?null:Ee.indexOf(n)}function ct(n){return["C","Db","D","Eb","E","F","F#","G","Ab","A","Bb","B"][(n%12+12)%12]}function Vt(n,t){return t==="nc"?"N.C.":t==="min"?`${ct(n)}m`:ct(n)}const nt=48,Y=96,q=7,st=10,Z=D*st,tt=(Y-nt+1)*q,Mt=2,Me={tonic:"T",subdominant:"S",dominant:"D"};function Ce(n){let t=Et(),e=null,s=!1,o=null;const c=new X,u=S("svg",{class:"melody-roll",viewBox:`0 0 ${Z} ${tt}`}),d=S("line",{class:"playhead hidden",x1:0,y1:0,x2:0,y2:tt}),g=i("div",{class:"chord-strip"}),A=[],v=i("button",{class:"primary",click:U},"Play"),L=i("button",{click:V},"Clear melody"),E=i("select",{change:()=>F(Number(E.value))}),p=[{x:110,y:30,label:"tonic"},{x:28,y:158,label:"subdominant"},{x:192,y:158,label:"dominant"}],a=S("svg",{class:"harmony-widget",viewBox:"0 0 220 190"});a.append(S("polygon",{class:"triangle-edges",points:p.map(r=>`${r.x},${r.y}`).join(" ")}));const x=p.map((r,l)=>{const f=S("circle",{class:"function-dot",cx:r.x,cy:r.y,r:11}),m=S("text",{class:"widget-label",x:r.x,y:l===0?r.y-20:r.y+28,"text-anchor":"middle"});return m.textContent=r.label,a.append(f,m),f}),w=S("svg",{class:"harmony-widget",viewBox:"0 0 220 220"});w.append(S("circle",{class:"cof-ring",cx:110,cy:110,r:78}));const _=(r,l)=>{const f=r/12*2*Math.PI-Math.PI/2;return{x:110+l*Math.cos(f),y:110+l*Math.sin(f)}};Pe.forEach((r,l)=>{const f=_(l,95),m=S("text",{class:"widget-label",x:f.x,y:f.y+4,"text-anchor":"middle"});m.textContent=r;const C=_(l,78);w.append(S("circle",{class:"cof-tick",cx:C.x,cy:C.y,r:3}),m)});const M=S("circle",{class:"cof-marker hidden",cx:110,cy:32,r:9});w.append(M),n.append(i("section",{class:"demo"},i("div",{class:"demo-header"},i("h2",{},"Comp It"),i("p",{class:"hint"},"Click the roll to place or remove notes; the server re-harmonizes ","after every edit. During playback the triangle and circle of ","fifths track the sounding chord."),i("div",{class:"controls"},v,i("label",{class:"field"},"melody ",E),L)),i("div",{class:"harmonize-body"},i("div",{class:"roll-box"},u,g),i("div",{class:"widget-column"},i("h3",{},"Function"),a,i("h3",{},"Circle of fifths"),w))));function T(){j(u);for(let l=nt;l<=Y;l+=1)l%12===0&&u.append(S("rect",{class:"octave-stripe",x:0,y:(Y-l)*q,width:Z,height:q}));for(let l=0;l<=O;l+=1){const f=l*(Z/O);u.append(S("line",{class:l%2===0?"grid-line bar":"grid-line",x1:f,y1:0,x2:f,y2:tt}))}for(const l of gt(t)){const f=l.token-Mt+nt;u.append(S("rect",{class:"note",x:l.start*st+.5,y:(Y-f)*q+1,width:(l.end-l.start)*st-1.5,height:q-2,rx:2}))}const r=S("rect",{class:"click-overlay",x:0,y:0,width:Z,height:tt});r.addEventListener("pointerdown",l=>{const f=u.getBoundingClientRect(),m=(l.clientX-f.left)/f.width*Z,C=(l.clientY-f.top)/f.height*tt,K=Math.min(D-1,Math.max(0,Math.floor(m/st))),Xt=Y-Math.min(Y-nt,Math.max(0,Math.floor(C/q)));R(K,Xt-nt+Mt)}),u.append(r,d)}function h(){j(g),A.length=0;for(let r=0;r<O;r+=1){const l=(e==null?void 0:e.chords[r])??null,f=(e==null?void 0:e.functions[r])??null,m=i("div",{class:`slot${r===o?" active":""}`},i("div",{class:"slot-chord"},l?Vt(l.root,l.quality):"..."),i("div",{class:"slot-fn"},f?Me[f]:""));A.push(m),g.append(m)}}function y(){const r=o!==null?(e==null?void 0:e.functions[o])??null:null,l=Te(r??null);x.forEach((m,C)=>m.classList.toggle("active",C===l));const f=o!==null?(e==null?void 0:e.circle_indices[o])??null:null;if(f===null)M.classList.add("hidden");else{const m=_(f,78);M.setAttribute("cx",String(m.x)),M.setAttribute("cy",String(m.y)),M.classList.remove("hidden")}A.forEach((m,C)=>m.classList.toggle("active",C===o))}function b(r){r!==o&&(o=r,y())}function k(){c.run(()=>I.harmonize({tokens:t})).then(r=>{r&&(e=r,h(),y())}).catch($)}function R(r,l){t=he(t,r,l),T(),k()}function V(){t=Et(),T(),k()}function F(r){I.library().then(l=>{const f=l.sheets.find(m=>m.id===r);f&&(t=f.sheet.melody.tokens.slice(),T(),k())}).catch($)}function U(){if(s){P.stop();return}P.start(mt(()=>({tokens:t,chords:(e==null?void 0:e.chords)??null})),rt),s=!0,v.textContent="Stop"}P.onStop(()=>{s&&(s=!1,v.textContent="Play",d.classList.add("hidden"),b(null))}),P.onStep(r=>{if(!s)return;const l=(r+.5)*st;d.setAttribute("x1",String(l)),d.setAttribute("x2",String(l)),d.classList.remove("hidden"),b(Le(r))}),I.library().then(r=>{for(const l of r.sheets)E.append(i("option",{value:l.id},`sheet ${l.id} (key ${ct(l.sheet.key)})`));r.sheets.length>0&&(t=r.sheets[0].sheet.melody.tokens.slice(),T(),k())}).catch($),T(),h()}const Ae=["guide-a","guide-b","guide-middle"];function _e(n){return{phase:"guide-a",frameCount:n,selected:0}}function xt(n){switch(n.phase){case"guide-a":return 0;case"guide-b":return n.frameCount-1;case"guide-middle":return Math.floor((n.frameCount-1)/2);case"free":return null}}function ke(n){const t=[...Ae,"free"],e=t.indexOf(n.phase),s=t[Math.min(e+1,t.length-1)],o={...n,phase:s},c=xt(o);return c===null?o:{...o,selected:c}}function Re(n,t){return t<0||t>=n.frameCount||n.phase!=="free"&&t!==xt(n)?n:{...n,selected:t}}const Ct=2,At=48;function Be(n,t,e=520,s=120){const o=t?20:0,c=s-o,u=gt(n),d=u.map(a=>a.token-Ct+At),g=Math.min(...d.length?d:[60])-2,A=Math.max(...d.length?d:[72])+2,v=a=>c-(a-g)/(A-g)*(c-8)-4,L=a=>a/D*e,E=S("svg",{class:"sheet-view",viewBox:`0 0 ${e} ${s}`,width:e,height:s});for(let a=0;a<=O;a+=1){const x=a/O*e;E.append(S("line",{class:a%2===0?"grid-line bar":"grid-line",x1:x,y1:0,x2:x,y2:c}))}for(const a of u){const x=a.token-Ct+At;E.append(S("rect",{class:"note",x:L(a.start),y:v(x)-2.5,width:L(a.end)-L(a.start)-1,height:5,rx:1.5}))}if(t)for(let a=0;a<O;a+=1){const x=a/O*e,w=t[a];E.append(S("rect",{class:w.quality==="nc"?"chord-cell nc":"chord-cell",x:x+1,y:c+1,width:e/O-2,height:o-2,rx:2}));const _=S("text",{class:"chord-text",x:x+e/O/2,y:c+o/2+3.5,"text-anchor":"middle"});_.textContent=Vt(w.root,w.quality),E.append(_)}const p=S("line",{class:"playhead hidden",x1:0,y1:0,x2:0,y2:s});return E.append(p),{root:E,setPlayhead(a){if(a===null){p.classList.add("hidden");return}const x=L(a)+e/D/2;p.setAttribute("x1",String(x)),p.setAttribute("x2",String(x)),p.classList.remove("hidden")}}}const Oe={"guide-a":"Step 1 of 3: listen to song A first.","guide-b":"Step 2 of 3: now listen to song B.","guide-middle":"Step 3 of 3: hear the frame halfway between them.",free:"Tour done. Pick any frame and compare."};function De(n){let t=[],e=[],s=null,o=null,c=[];const u=new X,d=i("select",{class:"song-select"}),g=i("select",{class:"song-select"}),A=i("input",{type:"number",min:2,max:17,value:7}),v=i("select",{});v.append(i("option",{value:"slerp"},"slerp"),i("option",{value:"lerp"},"lerp"));const L=i("button",{class:"primary",click:T},"Blend"),E=i("p",{class:"hint"},"Loading the song library…"),p=i("div",{class:"mixer-panels"});n.append(i("section",{class:"demo"},i("div",{class:"demo-header"},i("h2",{},"Song Mixer"),E,i("div",{class:"controls"},i("label",{class:"field"},"song A ",d),i("label",{class:"field"},"song B ",g),i("label",{class:"field"},"frames ",A),i("label",{class:"field"},"mode ",v),L)),p));function a(h){return h===0?"A":h===e.length-1?"B":String(h)}function x(h,y,b){if(y){if(o===h){P.stop();return}P.start(mt(()=>({tokens:e[h].melody.tokens,chords:e[h].chords})),rt),o=h,b&&s&&(s=ke(s)),M()}}function w(h,y,b,k,R){const V=Be(e[y].melody.tokens,e[y].chords);c.push({frame:y,view:V});const F=i("button",{class:o===y?"primary":"",disabled:!k,click:()=>x(y,k,b)},o===y?"Stop":"Play"),U=i("div",{class:"panel-head"},i("h3",{},h),F);return i("div",{class:`mixer-panel${b?" guided":""}`},U,R??i("span",{}),V.root)}function _(h){const y=i("div",{class:"radio-row"});for(let b=0;b<e.length;b+=1){const k=h.phase==="free"||b===xt(h),R=i("label",{class:`radio-item${h.selected===b?" selected":""}`},i("input",{type:"radio",name:"mixer-frame",checked:h.selected===b,disabled:!k,change:()=>{s&&(s=Re(s,b),M())}}),a(b));y.append(R)}return y}function M(){if(j(p),c=[],!s||e.length===0){p.append(i("p",{class:"hint"},"Blend two songs to begin."));return}const h=s;E.textContent=Oe[h.phase];const y=e.length-1,b=Math.floor(y/2);p.append(w("Song A",0,h.phase==="guide-a",h.phase==="guide-a"||h.phase==="free"),w(`Interpolation (frame ${a(h.selected)})`,h.selected,h.phase==="guide-middle"&&h.selected===b,h.phase==="guide-middle"||h.phase==="free",_(h)),w("Song B",y,h.phase==="guide-b",h.phase==="guide-b"||h.phase==="free"))}function T(){const h=Number(d.value),y=Number(g.value),b=Number(A.value),k=v.value;P.stop(),u.run(()=>I.interpolate(h,y,b,k)).then(R=>{R&&(e=R.frames,s=_e(e.length),M())}).catch($)}P.onStop(()=>{if(o!==null){o=null;for(const{view:h}of c)h.setPlayhead(null);M()}}),P.onStep(h=>{if(o!==null)for(const{frame:y,view:b}of c)b.setPlayhead(y===o?h:null)}),I.library().then(h=>{t=h.sheets;for(const y of t){const b=`sheet ${y.id} (key ${ct(y.sheet.key)})`;d.append(i("option",{value:y.id},b)),g.append(i("option",{value:y.id},b))}d.value="0",g.value=String(Math.min(1,t.length-1)),T()}).catch($),M()}function Ie(n,t,e){return{mode:n,sessionId:t,round:e,played:[!1,!1],answered:!1,lastCorrect:null,score:0,wrong:0,finished:!1}}function $e(n,t){const e=[...n.played];return e[t]=!0,{...n,played:e}}function dt(n){return n.played[0]&&n.played[1]&&!n.answered&&!n.finished&&n.round!==null}function Ne(n,t){const e=t.next_round??null;return{...n,lastCorrect:t.correct,score:t.score,wrong:n.wrong+(t.correct?0:1),finished:t.finished,round:e??n.round,played:e?[!1,!1]:n.played,answered:e===null}}const ht=96,_t=D/8;function Ge(n,t){for(const e of n)if(t>=e.start&&t<e.end){const s=t-e.start;return .35+.65*Math.exp(-s/6)}return 0}function Ve(n,t){const e=Math.min(n.length-1,Math.floor(t/_t));if(e<0||n[e].quality==="nc")return 0;const o=t-e*_t;return .3*(.45+.55*Math.exp(-o/10))}function Fe(n,t){const e=gt(n),s=[];for(let o=0;o<ht;o+=1){const c=o*D/ht,u=Ge(e,c)+Ve(t,c);s.push(Math.min(1,u))}return s}const kt=6;function Ue(n){let t=null,e=null,s=[[],[]],o=[null,null];const c=new X,u=i("div",{class:"turing-body"});n.append(i("section",{class:"demo"},i("div",{class:"demo-header"},i("h2",{},"Turing Game"),i("p",{class:"hint"},"One clip was harmonized by a person, the other by the model. ","Play both, then point at the machine."),i("div",{class:"controls"},i("button",{click:()=>d("practice")},`Practice (${kt} rounds)`),i("button",{click:()=>d("challenge")},"Challenge (3 strikes)"))),u));function d(p){P.stop(),I.turingStart(p).then(a=>{t=Ie(p,a.session_id,a.round),e=null,E()}).catch($)}function g(p){if(!t||!t.round)return;if(e===p){P.stop();return}const a=t.round;P.start(mt(()=>({tokens:a.melody.tokens,chords:a.clips[p]}),1),rt),t=$e(t,p),e=p,E()}function A(p){if(!t||!t.round||!dt(t))return;const{sessionId:a,round:x}=t;P.stop(),c.run(()=>I.turingGuess(a,x.round_id,p)).then(w=>{w&&t&&(t=Ne(t,w),E())}).catch($)}function v(p){const a=t,x=a.round,w=Fe(x.melody.tokens,x.clips[p]),_=i("div",{class:"waveform"});s[p]=w.map(h=>{const y=i("span",{class:"bar"});return y.style.height=`${(4+h*40).toFixed(1)}px`,_.append(y),y});const M=i("button",{class:e===p?"primary":"",click:()=>g(p)},e===p?"Stop":a.played[p]?"Play again":"Play");o[p]=M;const T=i("button",{class:"guess",disabled:!dt(a),click:()=>A(p)},"This is the machine");return i("div",{class:"clip-card"},i("h3",{},`Clip ${p+1}`),_,i("div",{class:"clip-actions"},M,T))}function L(p){const a=p.round,x=[i("span",{class:"stat"},`round ${a.number}${p.mode==="practice"?` of ${kt}`:""}`),i("span",{class:"stat"},`score ${p.score}`)];return p.mode==="challenge"&&x.push(i("span",{class:"stat strikes"},"✗".repeat(p.wrong)||"no strikes")),p.lastCorrect!==null&&x.push(i("span",{class:p.lastCorrect?"verdict good":"verdict bad"},p.lastCorrect?"last guess: correct":"last guess: wrong")),i("div",{class:"status-row"},...x)}function E(){if(j(u),s=[[],[]],o=[null,null],!t){u.append(i("p",{class:"hint"},"Pick a mode to start."));return}if(t.finished){u.append(i("div",{class:"final-panel"},i("h3",{},t.mode==="practice"?"Practice complete":"Challenge over"),i("p",{},`Final score: ${t.score}`),i("p",{class:"hint"},"Start another game from the buttons above.")));return}t.round&&u.append(L(t),i("div",{class:"clip-row"},v(0),v(1)),i("p",{class:"hint"},dt(t)?"Make your pick.":"Play both clips at least once to unlock guessing."))}P.onStop(()=>{if(e!==null){const p=e;e=null;const a=o[p];a&&(a.textContent="Play again",a.classList.remove("primary"))}}),P.onStep(p=>{if(e===null)return;const a=Math.floor(p/D*ht);s[e].forEach((x,w)=>x.classList.toggle("lit",w<=a))}),E()}const Ft=[{id:"drum",label:"Latent Inspector",mount:Se},{id:"mixer",label:"Song Mixer",mount:De},{id:"harmonize",label:"Comp It",mount:Ce},{id:"turing",label:"Turing Game",mount:Ue}],bt=document.getElementById("app");if(!bt)throw new Error("missing #app mount point");const Ut=i("nav",{class:"tabs"}),Yt=i("main",{class:"stage"});bt.append(i("header",{class:"masthead"},i("h1",{},"jamlab"),i("p",{class:"tagline"},"play with the music models"),Ut),Yt);ne(bt);const qt=new Map,Ht=new Map,Rt=new Set;function zt(n){P.stop();for(const t of Ft){const e=qt.get(t.id),s=Ht.get(t.id);if(!e||!s)continue;const o=t.id===n;e.classList.toggle("hidden",!o),s.classList.toggle("active",o),o&&!Rt.has(t.id)&&(Rt.add(t.id),t.mount(e))}}for(const n of Ft){const t=i("button",{class:"tab",click:()=>zt(n.id)},n.label);Ht.set(n.id,t),Ut.append(t);const e=i("div",{class:"pane hidden"});qt.set(n.id,e),Yt.append(e)}zt("drum");
